#pragma once

#include "zeig/tensor.hpp"

namespace zeig {

/// Singularity detection and lambda-perturbation settings shared by the
/// shifted and bordered solves.
struct LinalgOptions {
  double rcond_threshold = 1e-12;  ///< "nearly singular" below this 1-norm rcond
  double epsilon_base = 1e-8;      ///< eps_j = max(1, |lambda|) * base * 2^j
  int epsilon_steps = 40;          ///< j = 0..steps, then PerturbationExhausted
};

struct SolveDiagnostics {
  double rcond = 0.0;         ///< reciprocal 1-norm condition estimate in [0, 1]
  bool singular = false;      ///< rcond < threshold
  double perturbation = 0.0;  ///< lambda shift applied before solving
};

/// Raised for SingularShift, SingularBordered and PerturbationExhausted; the
/// diagnostics of the failed factorization travel with it.
class SingularSystemError : public Error {
 public:
  SingularSystemError(Errc code, const std::string& what, SolveDiagnostics diag)
      : Error(code, what), diagnostics_(diag) {}
  const SolveDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  SolveDiagnostics diagnostics_;
};

struct ShiftedSolution {
  Vector w;
  SolveDiagnostics diagnostics;
};

struct BorderedSolution {
  Vector d;
  double delta = 0.0;
  SolveDiagnostics diagnostics;
};

/// Solves (lambda I - T) w = b. Throws SingularSystemError(SingularShift).
ShiftedSolution solve_shifted(double lambda, const Matrix& t, const Vector& b,
                              const LinalgOptions& opts = {});

/// Reciprocal condition of lambda I - T without solving anything.
SolveDiagnostics shifted_diagnostics(double lambda, const Matrix& t, const LinalgOptions& opts = {});

/// The (n+1) x (n+1) Newton matrix [[lambda I - T, x], [e^T, 0]].
Matrix bordered_matrix(double lambda, const Matrix& t, const Vector& x);

double bordered_determinant(double lambda, const Matrix& t, const Vector& x);

SolveDiagnostics bordered_diagnostics(double lambda, const Matrix& t, const Vector& x,
                                      const LinalgOptions& opts = {});

/// Solves [[lambda I - T, x], [e^T, 0]] [d; delta] = [r; s].
/// Throws SingularSystemError(SingularBordered).
BorderedSolution solve_bordered(double lambda, const Matrix& t, const Vector& x, const Vector& r,
                                double s, const LinalgOptions& opts = {});

struct PerturbedShift {
  double lambda = 0.0;
  SolveDiagnostics diagnostics;  ///< of the accepted bordered matrix
};

/// Returns lambda unchanged if the bordered matrix is usable, otherwise the
/// first lambda + eps_j that is. With e^T x = 1 the bordered determinant is a
/// degree n-1 polynomial in lambda, so only finitely many shifts can fail.
/// Throws SingularSystemError(PerturbationExhausted) after the last eps_j.
PerturbedShift ensure_bordered_nonsingular(double lambda, const Matrix& t, const Vector& x,
                                           const LinalgOptions& opts = {});

}  // namespace zeig
