#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zeig/solvers.hpp"

namespace zeig {

struct Eigenpair {
  Vector x;
  double lambda = 0.0;
  double residual = 0.0;
  Vector witness;  ///< start vector that led here
  Method method = Method::Mpni;
};

/// Distinct nonnegative eigenpairs, sorted by eigenvalue.
using EigenpairSet = std::vector<Eigenpair>;

struct StartOutcome {
  Vector start;
  Status status = Status::MaxIter;
  int iterations = 0;
  double lambda = 0.0;
  double residual = 0.0;
  std::string reason;  ///< why the run was not admitted, empty if it was
};

struct MultiStartResult {
  EigenpairSet pairs;
  std::vector<StartOutcome> runs;  ///< in start order
};

/// Solves from num_starts points drawn uniformly from the open simplex and
/// collects the distinct nonnegative eigenpairs found. Deterministic in seed.
MultiStartResult multi_start(const Tensor& a, int num_starts, std::uint64_t seed,
                             const SolverConfig& config);

/// Uniform sample from the open probability simplex (normalized exponentials).
std::vector<Vector> simplex_starts(int dim, int count, std::uint64_t seed);

/// Clusters pairs with ||x - x'||_1 < x_tol and |lambda - lambda'| < lambda_tol
/// and keeps the lowest-residual member of each cluster. Output is sorted by
/// eigenvalue, then lexicographically by x.
EigenpairSet dedup(std::vector<Eigenpair> pairs, double x_tol = 1e-8, double lambda_tol = 1e-8);

struct ConvergenceEstimate {
  std::vector<double> errors;  ///< e_k = ||x_k - x*||_1 + |lambda_k - lambda*| for every record
  double order = 0.0;          ///< least-squares slope of log e_{k+1} against log e_k
  int usable_points = 0;
};

/// Fits the convergence order over the records whose error lies in
/// (1e-13, 1e-2). Throws Error(InsufficientData) with fewer than 3 such points.
ConvergenceEstimate estimate_order(const IterationTrace& trace, const Iterate& reference);

/// Same fit for a bare error sequence.
ConvergenceEstimate estimate_order(const std::vector<double>& errors);

/// Drives the iterate further with bordered Newton steps and returns the
/// lowest-residual point seen; used as the self-reference for estimate_order.
Iterate refine_reference(const Tensor& a, const Iterate& start, int max_steps = 8);

/// Random nonnegative tensor: round(density * n^m) (at least one) distinct
/// index tuples, values uniform in [0, 1]. Deterministic in seed.
Tensor random_tensor(int order, int dim, double density, std::uint64_t seed);

/// Largest columnwise relative error of jacobian_T against central differences
/// of apply with step h * max(1, |x_j|). Column errors are max-norm
/// differences divided by max |T_ij| (1 when T = 0), so zero columns do not
/// blow up on rounding noise.
double fd_check(const Tensor& a, const Vector& x, double h);

}  // namespace zeig
