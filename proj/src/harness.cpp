#include "zeig/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

namespace zeig {

namespace {

constexpr double kSimplexTol = 1e-12;
constexpr double kErrorFloor = 1e-13;
constexpr double kErrorCeiling = 1e-2;

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::vector<Vector> simplex_starts(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int s = 0; s < count; ++s) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
      double draw = 0.0;
      while (!(draw > 0.0)) draw = expo(rng);
      v[i] = draw;
    }
    out.push_back(v / v.sum());
  }
  return out;
}

MultiStartResult multi_start(const Tensor& a, int num_starts, std::uint64_t seed,
                             const SolverConfig& config) {
  if (num_starts < 1) throw Error(Errc::InvalidArgument, "multi_start needs at least one start");
  config.validate();
  MultiStartResult result;
  std::vector<Eigenpair> found;
  for (Vector& start : simplex_starts(a.dim(), num_starts, seed)) {
    StartOutcome out;
    out.start = start;
    SolveReport rep = solve(a, start, config);
    out.status = rep.status;
    out.iterations = rep.iterations;
    out.lambda = rep.final.lambda;
    out.residual = rep.final.residual_norm;
    if (rep.status != Status::Converged) {
      out.reason = std::string("solver stopped: ") + std::string(to_string(rep.status));
    } else {
      Vector x = rep.final.x;
      // Plain Newton can land a hair below zero on a zero component.
      if (x.minCoeff() < -kSimplexTol || rep.final.lambda < 0.0) {
        out.reason = "eigenpair is not nonnegative";
      } else {
        x = x.cwiseMax(0.0);
        x /= x.sum();
        const double res = residual(a, x, rep.final.lambda);
        if (res >= config.tol) {
          out.reason = "residual above tol after clipping to the simplex";
        } else {
          found.push_back({x, rep.final.lambda, res, start, config.method});
        }
      }
    }
    result.runs.push_back(std::move(out));
  }
  result.pairs = dedup(std::move(found));
  return result;
}

EigenpairSet dedup(std::vector<Eigenpair> pairs, double x_tol, double lambda_tol) {
  if (!(x_tol > 0.0) || !(lambda_tol > 0.0)) {
    throw Error(Errc::InvalidArgument, "dedup tolerances must be positive");
  }
  // Lowest residual first so each cluster is represented by its best member;
  // ties are broken by value so the outcome does not depend on input order.
  std::sort(pairs.begin(), pairs.end(), [](const Eigenpair& p, const Eigenpair& q) {
    if (p.residual != q.residual) return p.residual < q.residual;
    if (p.lambda != q.lambda) return p.lambda < q.lambda;
    return lex_less(p.x, q.x);
  });
  EigenpairSet kept;
  for (Eigenpair& p : pairs) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const Eigenpair& q) {
      return (p.x - q.x).lpNorm<1>() < x_tol && std::abs(p.lambda - q.lambda) < lambda_tol;
    });
    if (!dup) kept.push_back(std::move(p));
  }
  std::sort(kept.begin(), kept.end(), [](const Eigenpair& p, const Eigenpair& q) {
    if (p.lambda != q.lambda) return p.lambda < q.lambda;
    return lex_less(p.x, q.x);
  });
  return kept;
}

ConvergenceEstimate estimate_order(const std::vector<double>& errors) {
  ConvergenceEstimate est;
  est.errors = errors;
  auto usable = [](double e) { return e > kErrorFloor && e < kErrorCeiling; };
  est.usable_points = static_cast<int>(std::count_if(errors.begin(), errors.end(), usable));
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    if (usable(errors[k]) && usable(errors[k + 1])) {
      xs.push_back(std::log(errors[k]));
      ys.push_back(std::log(errors[k + 1]));
    }
  }
  if (est.usable_points < 3 || xs.size() < 2) {
    throw Error(Errc::InsufficientData,
                "need at least 3 errors in (1e-13, 1e-2), got " + std::to_string(est.usable_points));
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw Error(Errc::InsufficientData, "usable errors are all equal");
  est.order = sxy / sxx;
  return est;
}

ConvergenceEstimate estimate_order(const IterationTrace& trace, const Iterate& reference) {
  std::vector<double> errors;
  errors.reserve(trace.size());
  for (const StepRecord& r : trace) {
    errors.push_back((r.x - reference.x).lpNorm<1>() + std::abs(r.lambda - reference.lambda));
  }
  return estimate_order(errors);
}

Iterate refine_reference(const Tensor& a, const Iterate& start, int max_steps) {
  Iterate best{start.x, start.lambda, residual(a, start.x, start.lambda)};
  Vector x = start.x;
  double lambda = start.lambda;
  for (int i = 0; i < max_steps && best.residual_norm > 0.0; ++i) {
    try {
      auto step = newton_step_bordered(a, x, lambda);
      x = step.x;
      lambda = step.lambda;
    } catch (const Error&) {
      break;
    }
    const double res = residual(a, x, lambda);
    if (!std::isfinite(res)) break;
    if (res < best.residual_norm) best = {x, lambda, res};
  }
  return best;
}

Tensor random_tensor(int order, int dim, double density, std::uint64_t seed) {
  if (order < 2 || dim < 1) throw Error(Errc::BadShape, "random_tensor needs m >= 2, n >= 1");
  if (!(density > 0.0 && density <= 1.0)) {
    throw Error(Errc::InvalidArgument, "density must lie in (0, 1]");
  }
  const double total_d = std::pow(static_cast<double>(dim), order);
  if (total_d > 9e15) throw Error(Errc::InvalidArgument, "tensor too large to sample");
  const auto total = static_cast<std::uint64_t>(std::llround(total_d));
  const auto count = std::max<std::uint64_t>(1, std::llround(density * total_d));

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> picked;
  if (total <= (1u << 22)) {
    std::vector<std::uint64_t> all(total);
    std::iota(all.begin(), all.end(), 0);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uniform_int_distribution<std::uint64_t> pick(i, total - 1);
      std::swap(all[i], all[pick(rng)]);
    }
    picked.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
  } else {
    std::unordered_set<std::uint64_t> seen;
    std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
    while (picked.size() < count) {
      const auto lin = pick(rng);
      if (seen.insert(lin).second) picked.push_back(lin);
    }
  }
  std::sort(picked.begin(), picked.end());

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Entry> entries;
  entries.reserve(picked.size());
  for (std::uint64_t lin : picked) {
    Entry e;
    e.index.resize(order);
    for (int p = order - 1; p >= 0; --p) {
      e.index[p] = static_cast<int>(lin % dim) + 1;
      lin /= dim;
    }
    e.value = unit(rng);
    entries.push_back(std::move(e));
  }
  return Tensor(order, dim, entries);
}

double fd_check(const Tensor& a, const Vector& x, double h) {
  if (!(h > 0.0)) throw Error(Errc::InvalidArgument, "fd_check step must be positive");
  const Matrix t = jacobian_T(a, x);
  double scale = t.cwiseAbs().maxCoeff();
  if (scale == 0.0) scale = 1.0;
  double worst = 0.0;
  for (int j = 0; j < a.dim(); ++j) {
    const double step = h * std::max(1.0, std::abs(x[j]));
    Vector xp = x, xm = x;
    xp[j] += step;
    xm[j] -= step;
    const Vector fd = (apply(a, xp) - apply(a, xm)) / (xp[j] - xm[j]);
    worst = std::max(worst, (fd - t.col(j)).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

}  // namespace zeig
