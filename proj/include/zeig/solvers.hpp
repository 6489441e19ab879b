#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zeig/linalg.hpp"
#include "zeig/tensor.hpp"

namespace zeig {

enum class Method { Newton, Mni, Pni, Mpni };

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

struct SolverConfig {
  Method method = Method::Mpni;
  double tol = 1e-12;  ///< stop when ||A x^{m-1} - lambda x||_1 < tol
  int max_iter = 100;
  /// beta_1, beta_2, ... for PNI's lambda update; missing entries are 0.
  std::vector<double> beta_schedule;
  LinalgOptions linalg;
  double divergence_bound = 1e8;
  /// Starting eigenvalue for plain Newton. MNI, PNI and MPNI always start
  /// from the upper ratio bound and ignore this.
  std::optional<double> lambda0;

  /// Throws Error(InvalidArgument) if tol <= 0, max_iter < 0 or some beta is
  /// outside [0, 1].
  void validate() const;
};

struct Iterate {
  Vector x;
  double lambda = 0.0;
  double residual_norm = 0.0;
};

enum class Status {
  Converged,
  MaxIter,
  Diverged,
  PerturbationExhausted,
  ProjectionEmpty,
  SingularShift,
  ZeroDenominator,
};

std::string_view to_string(Status s) noexcept;

struct StepFlags {
  bool lambda_perturbed = false;       ///< lambda_k was moved before the linear solve
  bool projection_active = false;      ///< the projection changed some component
  bool zero_denominator = false;       ///< e^T w_hat = 0 branch (MNI)
  bool beta_escalated = false;         ///< PNI raised beta to escape a singular shift
};

/// Record for iterate k. Fields that describe the step are those of the step
/// that produced x_k, so record 0 only has x_0, lambda_0, bounds and residual.
struct StepRecord {
  int k = 0;
  Vector x;
  double lambda = 0.0;
  std::optional<double> lambda_hat;
  std::optional<RatioBounds> interval;
  double residual = 0.0;
  StepFlags flags;
  double perturbation = 0.0;  ///< eps added to lambda_{k-1} before the step
  double beta = 0.0;          ///< PNI beta used for lambda_k
  std::optional<Vector> x_hat;  ///< unprojected Newton iterate (MPNI)
};

using IterationTrace = std::vector<StepRecord>;

struct SolveReport {
  Method method = Method::Mpni;
  Status status = Status::MaxIter;
  Iterate final;
  int iterations = 0;
  IterationTrace trace;
  std::string message;
  bool beta_used = false;  ///< PNI ran with some beta > 0
};

struct NewtonStep {
  Vector x;
  double lambda = 0.0;
};

struct ClosedNewtonStep {
  Vector x;
  double lambda = 0.0;
  Vector w_hat;
};

/// One Newton step for f(x, lambda) = [lambda x - A x^{m-1}; e^T x - 1] via
/// the bordered system. Throws SingularSystemError(SingularBordered).
NewtonStep newton_step_bordered(const Tensor& a, const Vector& x, double lambda,
                                const LinalgOptions& opts = {});

/// The same step written through w_hat = (lambda I - T(x))^{-1} x; needs
/// e^T x = 1. Throws SingularSystemError(SingularShift) or
/// Error(ZeroDenominator) when e^T w_hat = 0.
ClosedNewtonStep newton_step_closed(const Tensor& a, const Vector& x, double lambda,
                                    const LinalgOptions& opts = {});

/// Keeps the dominant-sign part of w_hat: max(w_hat, 0) when
/// |max w_hat| > |min w_hat|, else min(w_hat, 0).
Vector project_sign_dominant(const Vector& w_hat);

/// max(x, 0) / ||max(x, 0)||_1. Throws Error(ProjectionEmpty) if x <= 0.
Vector proj_simplex(const Vector& x_hat);

/// MNI's default eigenvalue choice: clamp lambda_hat into [low, high], taking
/// high when lambda_hat is undefined (e^T w_hat = 0).
double mni_select_lambda(std::optional<double> lambda_hat, double low, double high);

/// PNI's damped update: move lambda_hat toward the far end of [low, high] by
/// the fraction beta.
double pni_select_lambda(double lambda_hat, double low, double high, double beta);

SolveReport run_mni(const Tensor& a, const Vector& x0, const SolverConfig& config);
SolveReport run_pni(const Tensor& a, const Vector& x0, const SolverConfig& config);
SolveReport run_mpni(const Tensor& a, const Vector& x0, const SolverConfig& config);
SolveReport run_newton(const Tensor& a, const Vector& x0, const SolverConfig& config);

/// Dispatches on config.method.
SolveReport solve(const Tensor& a, const Vector& x0, const SolverConfig& config);

}  // namespace zeig
