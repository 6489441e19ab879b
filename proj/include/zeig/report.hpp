#pragma once

#include <cstdint>
#include <iosfwd>

#include "json.hpp"

#include "zeig/harness.hpp"
#include "zeig/solvers.hpp"

namespace zeig::report {

using json = nlohmann::ordered_json;

/// {method, status, eigenvalue, eigenvector, residual, iterations[, message][, trace]}
json solve_json(const SolveReport& rep, bool with_trace);

/// {method, seed, starts, tol, eigenpairs: [...], runs: [...]}
json sweep_json(const MultiStartResult& res, Method method, std::uint64_t seed, double tol);

/// Serializes with every double written to 17 significant digits, so the
/// output is stable and round-trips exactly.
void write_json(std::ostream& out, const json& value, int indent = 2);

/// Trace as CSV with columns k,lambda,lambda_hat,lambda_low,lambda_high,residual,flags.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

void write_sweep_csv(std::ostream& out, const MultiStartResult& res);

void write_solve_text(std::ostream& out, const SolveReport& rep, bool with_trace);
void write_sweep_text(std::ostream& out, const MultiStartResult& res);

}  // namespace zeig::report
