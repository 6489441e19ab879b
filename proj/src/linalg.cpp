#include "zeig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zeig {

namespace {

Matrix shifted_matrix(double lambda, const Matrix& t) {
  if (t.rows() != t.cols()) throw Error(Errc::DimensionMismatch, "T must be square");
  Matrix s = -t;
  s.diagonal().array() += lambda;
  return s;
}

// Eigen's estimator divides by the inverse-norm estimate, which is inf/nan
// when a pivot is exactly zero.
double safe_rcond(const Eigen::PartialPivLU<Matrix>& lu) {
  const auto pivots = lu.matrixLU().diagonal();
  if (pivots.size() == 0) return 1.0;
  if ((pivots.array() == 0.0).any()) return 0.0;
  const double rc = lu.rcond();
  if (!std::isfinite(rc)) return 0.0;
  return std::clamp(rc, 0.0, 1.0);
}

SolveDiagnostics diagnose(const Eigen::PartialPivLU<Matrix>& lu, const LinalgOptions& opts) {
  SolveDiagnostics d;
  d.rcond = safe_rcond(lu);
  d.singular = d.rcond < opts.rcond_threshold;
  return d;
}

}  // namespace

ShiftedSolution solve_shifted(double lambda, const Matrix& t, const Vector& b,
                              const LinalgOptions& opts) {
  if (b.size() != t.rows()) throw Error(Errc::DimensionMismatch, "solve_shifted: rhs length");
  Eigen::PartialPivLU<Matrix> lu(shifted_matrix(lambda, t));
  auto diag = diagnose(lu, opts);
  if (diag.singular) {
    throw SingularSystemError(Errc::SingularShift,
                              "lambda I - T is (nearly) singular, rcond = " + std::to_string(diag.rcond),
                              diag);
  }
  return {lu.solve(b), diag};
}

SolveDiagnostics shifted_diagnostics(double lambda, const Matrix& t, const LinalgOptions& opts) {
  return diagnose(Eigen::PartialPivLU<Matrix>(shifted_matrix(lambda, t)), opts);
}

Matrix bordered_matrix(double lambda, const Matrix& t, const Vector& x) {
  const Eigen::Index n = t.rows();
  if (x.size() != n) throw Error(Errc::DimensionMismatch, "bordered_matrix: border length");
  Matrix j(n + 1, n + 1);
  j.topLeftCorner(n, n) = shifted_matrix(lambda, t);
  j.topRightCorner(n, 1) = x;
  j.bottomLeftCorner(1, n).setOnes();
  j(n, n) = 0.0;
  return j;
}

double bordered_determinant(double lambda, const Matrix& t, const Vector& x) {
  return Eigen::PartialPivLU<Matrix>(bordered_matrix(lambda, t, x)).determinant();
}

SolveDiagnostics bordered_diagnostics(double lambda, const Matrix& t, const Vector& x,
                                      const LinalgOptions& opts) {
  return diagnose(Eigen::PartialPivLU<Matrix>(bordered_matrix(lambda, t, x)), opts);
}

BorderedSolution solve_bordered(double lambda, const Matrix& t, const Vector& x, const Vector& r,
                                double s, const LinalgOptions& opts) {
  const Eigen::Index n = t.rows();
  if (r.size() != n) throw Error(Errc::DimensionMismatch, "solve_bordered: rhs length");
  Eigen::PartialPivLU<Matrix> lu(bordered_matrix(lambda, t, x));
  auto diag = diagnose(lu, opts);
  if (diag.singular) {
    throw SingularSystemError(Errc::SingularBordered,
                              "bordered Newton matrix is (nearly) singular, rcond = " +
                                  std::to_string(diag.rcond),
                              diag);
  }
  Vector rhs(n + 1);
  rhs.head(n) = r;
  rhs[n] = s;
  Vector sol = lu.solve(rhs);
  return {sol.head(n), sol[n], diag};
}

PerturbedShift ensure_bordered_nonsingular(double lambda, const Matrix& t, const Vector& x,
                                           const LinalgOptions& opts) {
  auto diag = bordered_diagnostics(lambda, t, x, opts);
  if (!diag.singular) return {lambda, diag};
  const double scale = std::max(1.0, std::abs(lambda));
  for (int j = 0; j <= opts.epsilon_steps; ++j) {
    const double eps = scale * opts.epsilon_base * std::ldexp(1.0, j);
    auto trial = bordered_diagnostics(lambda + eps, t, x, opts);
    if (!trial.singular) {
      trial.perturbation = eps;
      return {lambda + eps, trial};
    }
    diag = trial;
  }
  diag.perturbation = scale * opts.epsilon_base * std::ldexp(1.0, opts.epsilon_steps);
  throw SingularSystemError(Errc::PerturbationExhausted,
                            "no lambda + eps_j in the schedule gives a nonsingular bordered matrix",
                            diag);
}

}  // namespace zeig
