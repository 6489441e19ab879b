#include "zeig/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zeig {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Newton: return "newton";
    case Method::Mni: return "mni";
    case Method::Pni: return "pni";
    case Method::Mpni: return "mpni";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : {Method::Newton, Method::Mni, Method::Pni, Method::Mpni}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Converged: return "converged";
    case Status::MaxIter: return "max_iter";
    case Status::Diverged: return "diverged";
    case Status::PerturbationExhausted: return "perturbation_exhausted";
    case Status::ProjectionEmpty: return "projection_empty";
    case Status::SingularShift: return "singular_shift";
    case Status::ZeroDenominator: return "zero_denominator";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tol must be positive");
  if (max_iter < 0) throw Error(Errc::InvalidArgument, "max_iter must be nonnegative");
  for (double b : beta_schedule) {
    if (!(b >= 0.0 && b <= 1.0)) throw Error(Errc::InvalidArgument, "beta must lie in [0, 1]");
  }
  if (!(divergence_bound > 0.0)) throw Error(Errc::InvalidArgument, "divergence bound must be positive");
}

namespace {

// e^T w is treated as zero below this fraction of ||w||_1.
constexpr double kZeroSumTol = 1e-14;
// Accepted deviation of e^T x0 from 1 before the start is renormalized.
constexpr double kStartSumTol = 1e-10;

Vector checked_start(const Tensor& a, const Vector& x0, bool require_positive) {
  if (x0.size() != a.dim()) {
    throw Error(Errc::DimensionMismatch, "x0 has length " + std::to_string(x0.size()) +
                                             ", tensor dimension is " + std::to_string(a.dim()));
  }
  if (!x0.allFinite()) throw Error(Errc::InvalidArgument, "x0 is not finite");
  if (require_positive) {
    if (!(x0.array() > 0.0).all()) throw Error(Errc::InvalidArgument, "x0 must be positive");
    const double sum = x0.sum();
    if (std::abs(sum - 1.0) > kStartSumTol) {
      throw Error(Errc::InvalidArgument, "x0 must satisfy ||x0||_1 = 1");
    }
    return x0 / sum;
  }
  if (x0.lpNorm<1>() == 0.0) throw Error(Errc::ZeroVector, "x0 = 0");
  return x0;
}

bool diverged(const StepRecord& r, double bound) {
  return !r.x.allFinite() || !std::isfinite(r.lambda) || !std::isfinite(r.residual) ||
         r.residual > bound;
}

struct Adjusted {
  double lambda;
  bool perturbed;
};

// Moves lambda off a (nearly) singular lambda I - T. Candidates first walk
// toward the far end of [low, high] in doubling steps, ending at that
// endpoint; a degenerate interval falls back to the upward eps schedule.
std::optional<Adjusted> adjust_shift(double lambda, double low, double high, const Matrix& t,
                                     const LinalgOptions& opts) {
  if (!shifted_diagnostics(lambda, t, opts).singular) return Adjusted{lambda, false};
  const double other = (lambda - low >= high - lambda) ? low : high;
  if (other != lambda) {
    for (int j = 1; j <= 40; ++j) {
      const double cand = lambda + (other - lambda) * std::ldexp(1.0, j - 40);
      if (!shifted_diagnostics(cand, t, opts).singular) return Adjusted{cand, true};
    }
  }
  const double scale = std::max(1.0, std::abs(lambda));
  for (int j = 0; j <= opts.epsilon_steps; ++j) {
    const double cand = lambda + scale * opts.epsilon_base * std::ldexp(1.0, j);
    if (!shifted_diagnostics(cand, t, opts).singular) return Adjusted{cand, true};
  }
  return std::nullopt;
}

class Run {
 public:
  Run(const Tensor& a, const SolverConfig& cfg, Method m) : a_(a), cfg_(cfg) {
    cfg_.validate();
    report_.method = m;
  }

  // Appends the record and reports whether the run must stop on divergence.
  bool push(StepRecord rec) {
    rec.k = static_cast<int>(report_.trace.size());
    rec.residual = residual(a_, rec.x, rec.lambda);
    report_.trace.push_back(std::move(rec));
    if (diverged(report_.trace.back(), cfg_.divergence_bound)) {
      finish(Status::Diverged, "residual exceeded the divergence bound or became non-finite");
      return true;
    }
    return false;
  }

  // Converged / max_iter test on the newest record.
  bool should_stop() {
    const StepRecord& last = report_.trace.back();
    if (last.residual < cfg_.tol) {
      finish(Status::Converged, "");
      return true;
    }
    if (last.k >= cfg_.max_iter) {
      finish(Status::MaxIter, "iteration limit reached");
      return true;
    }
    return false;
  }

  SolveReport finish(Status s, std::string message) {
    report_.status = s;
    report_.message = std::move(message);
    if (!report_.trace.empty()) {
      const StepRecord& last = report_.trace.back();
      report_.final = {last.x, last.lambda, last.residual};
      report_.iterations = last.k;
    }
    return report_;
  }

  const StepRecord& last() const { return report_.trace.back(); }
  SolveReport& report() { return report_; }
  const SolverConfig& config() const { return cfg_; }

 private:
  const Tensor& a_;
  SolverConfig cfg_;
  SolveReport report_;
};

NewtonStep bordered_step(const Tensor& a, const Vector& x, double lambda, const Matrix& t,
                         const LinalgOptions& opts) {
  const Vector r = lambda * x - apply(a, x);
  const double s = x.sum() - 1.0;
  auto sol = solve_bordered(lambda, t, x, r, s, opts);
  return {x - sol.d, lambda - sol.delta};
}

}  // namespace

NewtonStep newton_step_bordered(const Tensor& a, const Vector& x, double lambda,
                                const LinalgOptions& opts) {
  return bordered_step(a, x, lambda, jacobian_T(a, x), opts);
}

ClosedNewtonStep newton_step_closed(const Tensor& a, const Vector& x, double lambda,
                                    const LinalgOptions& opts) {
  const int m = a.order();
  auto sol = solve_shifted(lambda, jacobian_T(a, x), x, opts);
  const double ew = sol.w.sum();
  if (std::abs(ew) < kZeroSumTol * sol.w.lpNorm<1>() || ew == 0.0) {
    throw Error(Errc::ZeroDenominator, "e^T w_hat = 0: the bordered Newton matrix is singular");
  }
  ClosedNewtonStep step;
  step.x = ((m - 2) * x + sol.w / ew) / (m - 1);
  step.lambda = (lambda - 1.0 / ew) / (m - 1);
  step.w_hat = std::move(sol.w);
  return step;
}

Vector project_sign_dominant(const Vector& w_hat) {
  if (w_hat.size() == 0 || (w_hat.array() == 0.0).all()) {
    throw Error(Errc::ZeroVector, "project_sign_dominant: input is zero");
  }
  // One-signed input is its own dominant part; the tie rule below would
  // otherwise zero out a constant positive vector.
  if ((w_hat.array() >= 0.0).all() || (w_hat.array() <= 0.0).all()) return w_hat;
  if (std::abs(w_hat.maxCoeff()) > std::abs(w_hat.minCoeff())) return w_hat.cwiseMax(0.0);
  return w_hat.cwiseMin(0.0);
}

Vector proj_simplex(const Vector& x_hat) {
  Vector p = x_hat.cwiseMax(0.0);
  const double s = p.sum();
  if (!(s > 0.0)) throw Error(Errc::ProjectionEmpty, "proj_simplex: no positive component");
  return p / s;
}

double mni_select_lambda(std::optional<double> lambda_hat, double low, double high) {
  if (!lambda_hat || *lambda_hat > high) return high;
  if (*lambda_hat < low) return low;
  return *lambda_hat;
}

double pni_select_lambda(double lambda_hat, double low, double high, double beta) {
  if (lambda_hat <= 0.5 * (low + high)) return lambda_hat + beta * (high - lambda_hat);
  return lambda_hat + beta * (low - lambda_hat);
}

SolveReport run_mni(const Tensor& a, const Vector& x0, const SolverConfig& config) {
  Run run(a, config, Method::Mni);
  const auto& cfg = run.config();
  const int m = a.order();

  StepRecord rec;
  rec.x = checked_start(a, x0, true);
  rec.interval = ratio_bounds(a, rec.x);
  rec.lambda = rec.interval->upper;
  if (run.push(std::move(rec))) return run.report();

  while (!run.should_stop()) {
    const StepRecord& cur = run.last();
    const Matrix t = jacobian_T(a, cur.x);
    // lambda_k must leave lambda I - T(x_k) usable; move it inside the
    // ratio interval if not.
    auto adj = adjust_shift(cur.lambda, cur.interval->lower, cur.interval->upper, t, cfg.linalg);
    if (!adj) return run.finish(Status::SingularShift, "no nonsingular shift found near the ratio interval");
    const double lambda = adj->lambda;

    StepRecord next;
    next.flags.lambda_perturbed = adj->perturbed;
    next.perturbation = lambda - cur.lambda;
    Vector w_hat;
    try {
      w_hat = solve_shifted(lambda, t, cur.x, cfg.linalg).w;
    } catch (const SingularSystemError& e) {
      return run.finish(Status::SingularShift, e.what());
    }
    const double ew = w_hat.sum();
    if (std::abs(ew) < kZeroSumTol * w_hat.lpNorm<1>() || ew == 0.0) {
      next.flags.zero_denominator = true;
    } else {
      next.lambda_hat = (lambda - 1.0 / ew) / (m - 1);
    }
    const Vector w = project_sign_dominant(w_hat);
    next.flags.projection_active = (w.array() != w_hat.array()).any();
    const Vector x_tilde = (m - 2) * cur.x + w / w.sum();
    next.x = x_tilde / x_tilde.lpNorm<1>();
    next.interval = ratio_bounds(a, next.x);
    next.lambda = mni_select_lambda(next.lambda_hat, next.interval->lower, next.interval->upper);
    if (run.push(std::move(next))) return run.report();
  }
  return run.report();
}

SolveReport run_pni(const Tensor& a, const Vector& x0, const SolverConfig& config) {
  Run run(a, config, Method::Pni);
  const auto& cfg = run.config();
  const int m = a.order();

  StepRecord rec;
  rec.x = checked_start(a, x0, true);
  rec.interval = ratio_bounds(a, rec.x);
  rec.lambda = rec.interval->upper;
  if (run.push(std::move(rec))) return run.report();

  while (!run.should_stop()) {
    const StepRecord& cur = run.last();
    const Matrix t = jacobian_T(a, cur.x);
    const double lo = cur.interval->lower, hi = cur.interval->upper;

    // If lambda_k leaves the shift singular, escalate beta through 0, 0.1,
    // ..., 1 in the lambda update that produced it; lambda_0 has no Newton
    // value and is moved within the interval like MNI's.
    double lambda = cur.lambda;
    StepRecord next;
    if (shifted_diagnostics(lambda, t, cfg.linalg).singular) {
      std::optional<double> fixed;
      if (cur.lambda_hat) {
        for (int i = 0; i <= 10 && !fixed; ++i) {
          const double lam = pni_select_lambda(*cur.lambda_hat, lo, hi, 0.1 * i);
          if (!shifted_diagnostics(lam, t, cfg.linalg).singular) {
            fixed = lam;
            next.beta = 0.1 * i;
            next.flags.beta_escalated = true;
            run.report().beta_used = run.report().beta_used || next.beta > 0.0;
          }
        }
      }
      if (!fixed) {
        auto adj = adjust_shift(lambda, lo, hi, t, cfg.linalg);
        if (!adj) return run.finish(Status::SingularShift, "no beta in [0, 1] gives a nonsingular shift");
        fixed = adj->lambda;
      }
      next.flags.lambda_perturbed = true;
      next.perturbation = *fixed - lambda;
      lambda = *fixed;
    }

    Vector w_hat;
    try {
      w_hat = solve_shifted(lambda, t, cur.x, cfg.linalg).w;
    } catch (const SingularSystemError& e) {
      return run.finish(Status::SingularShift, e.what());
    }
    const double ew = w_hat.sum();
    if (std::abs(ew) < kZeroSumTol * w_hat.lpNorm<1>() || ew == 0.0) {
      return run.finish(Status::ZeroDenominator, "e^T w_hat = 0, PNI cannot form the next iterate");
    }

    next.lambda_hat = (lambda - 1.0 / ew) / (m - 1);
    Vector x_tilde = (m - 2) * cur.x + w_hat / ew;
    next.flags.projection_active = (x_tilde.array() < 0.0).any();
    x_tilde = x_tilde.cwiseMax(0.0);
    const double sum = x_tilde.sum();
    if (!(sum > 0.0)) return run.finish(Status::ProjectionEmpty, "every component of x_tilde is <= 0");
    next.x = x_tilde / sum;
    next.interval = ratio_bounds(a, next.x);
    const std::size_t k = static_cast<std::size_t>(cur.k);
    const double beta = k < cfg.beta_schedule.size() ? cfg.beta_schedule[k] : 0.0;
    next.lambda = pni_select_lambda(*next.lambda_hat, next.interval->lower, next.interval->upper, beta);
    if (!next.flags.beta_escalated) next.beta = beta;
    run.report().beta_used = run.report().beta_used || beta > 0.0;
    if (run.push(std::move(next))) return run.report();
  }
  if (run.report().beta_used && run.report().message.empty()) {
    run.report().message = "beta > 0 was used; local quadratic convergence is not guaranteed";
  }
  return run.report();
}

SolveReport run_mpni(const Tensor& a, const Vector& x0, const SolverConfig& config) {
  Run run(a, config, Method::Mpni);
  const auto& cfg = run.config();

  StepRecord rec;
  rec.x = checked_start(a, x0, true);
  rec.interval = ratio_bounds(a, rec.x);
  rec.lambda = rec.interval->upper;
  if (run.push(rec)) return run.report();

  while (!run.should_stop()) {
    const StepRecord& cur = run.last();
    const Matrix t = jacobian_T(a, cur.x);
    StepRecord next;
    NewtonStep step;
    try {
      auto shift = ensure_bordered_nonsingular(cur.lambda, t, cur.x, cfg.linalg);
      next.perturbation = shift.lambda - cur.lambda;
      next.flags.lambda_perturbed = shift.lambda != cur.lambda;
      step = bordered_step(a, cur.x, shift.lambda, t, cfg.linalg);
    } catch (const SingularSystemError& e) {
      return run.finish(Status::PerturbationExhausted, e.what());
    }
    next.lambda_hat = step.lambda;
    next.flags.projection_active = (step.x.array() < 0.0).any() || step.lambda < 0.0;
    try {
      next.x = proj_simplex(step.x);
    } catch (const Error& e) {
      return run.finish(Status::ProjectionEmpty, e.what());
    }
    next.x_hat = std::move(step.x);
    next.lambda = std::max(step.lambda, 0.0);
    if (next.x.allFinite()) next.interval = ratio_bounds(a, next.x);
    if (run.push(std::move(next))) return run.report();
  }
  return run.report();
}

SolveReport run_newton(const Tensor& a, const Vector& x0, const SolverConfig& config) {
  Run run(a, config, Method::Newton);
  const auto& cfg = run.config();

  StepRecord rec;
  rec.x = checked_start(a, x0, false);
  if (cfg.lambda0) {
    rec.lambda = *cfg.lambda0;
  } else if ((rec.x.array() > 0.0).all()) {
    rec.interval = ratio_bounds(a, rec.x);
    rec.lambda = rec.interval->upper;
  } else {
    throw Error(Errc::InvalidArgument, "plain Newton from a non-positive x0 needs lambda0");
  }
  if (run.push(rec)) return run.report();

  while (!run.should_stop()) {
    const StepRecord& cur = run.last();
    const Matrix t = jacobian_T(a, cur.x);
    StepRecord next;
    NewtonStep step;
    try {
      auto shift = ensure_bordered_nonsingular(cur.lambda, t, cur.x, cfg.linalg);
      next.perturbation = shift.lambda - cur.lambda;
      next.flags.lambda_perturbed = shift.lambda != cur.lambda;
      step = bordered_step(a, cur.x, shift.lambda, t, cfg.linalg);
    } catch (const SingularSystemError& e) {
      return run.finish(Status::PerturbationExhausted, e.what());
    }
    next.lambda_hat = step.lambda;
    next.lambda = step.lambda;
    next.x = step.x;
    next.x_hat = std::move(step.x);
    if (run.push(std::move(next))) return run.report();
  }
  return run.report();
}

SolveReport solve(const Tensor& a, const Vector& x0, const SolverConfig& config) {
  switch (config.method) {
    case Method::Newton: return run_newton(a, x0, config);
    case Method::Mni: return run_mni(a, x0, config);
    case Method::Pni: return run_pni(a, x0, config);
    case Method::Mpni: return run_mpni(a, x0, config);
  }
  throw Error(Errc::InvalidArgument, "unknown method");
}

}  // namespace zeig
