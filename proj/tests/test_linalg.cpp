#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "zeig/linalg.hpp"

using namespace zeig;
using zeig::test::vec;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int n, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

}  // namespace

TEST_CASE("solve_shifted on a diagonal system") {
  auto sol = solve_shifted(2.0, Matrix::Zero(3, 3), vec({1, 1, 1}));
  CHECK(sol.w == vec({0.5, 0.5, 0.5}));
  CHECK_FALSE(sol.diagnostics.singular);
  CHECK(sol.diagnostics.rcond == doctest::Approx(1.0));
}

TEST_CASE("solve_shifted flags the example-2 shift as singular") {
  Matrix t(3, 3);
  t << 0, 0, 0, 0, 0, 1, 0, 1, 1;
  try {
    solve_shifted(0.0, t, vec({1, 0, 0}));
    FAIL("expected SingularShift");
  } catch (const SingularSystemError& e) {
    CHECK(e.code() == Errc::SingularShift);
    CHECK(e.diagnostics().singular);
    CHECK(e.diagnostics().rcond < 1e-12);
  }
  CHECK(shifted_diagnostics(0.0, t).singular);
}

TEST_CASE("solve_shifted backward error on random systems") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 8;
    const Matrix t = random_matrix(rng, n);
    const Vector b = test::random_simplex_point(rng, n);
    const double lambda = n + 1.0;  // beyond the Gershgorin disks, well conditioned
    auto sol = solve_shifted(lambda, t, b);
    const Matrix s = lambda * Matrix::Identity(n, n) - t;
    const double backward = (s * sol.w - b).lpNorm<1>() /
                            (b.lpNorm<1>() + t.cwiseAbs().colwise().sum().maxCoeff() * sol.w.lpNorm<1>());
    CHECK(backward <= 1e-12);
    CHECK(test::rel_err(sol.w, test::gauss_solve(s, b)) < 1e-10);
  }
}

TEST_CASE("bordered matrix for example 2 is the displayed Jacobian") {
  Matrix t(3, 3);
  t << 0, 0, 0, 0, 0, 1, 0, 1, 1;
  Matrix expected(4, 4);
  expected << 0, 0, 0, 1, 0, 0, -1, 0, 0, -1, -1, 0, 1, 1, 1, 0;
  const Vector x = vec({1, 0, 0});
  CHECK(bordered_matrix(0.0, t, x) == expected);
  CHECK_FALSE(bordered_diagnostics(0.0, t, x).singular);

  auto sol = solve_bordered(0.0, t, x, vec({1, 2, 3}), 4.0);
  CHECK(test::rel_err(sol.d, test::gauss_solve(expected, vec({1, 2, 3, 4})).head(3)) < 1e-14);
  CHECK(ensure_bordered_nonsingular(0.0, t, x).lambda == 0.0);
}

TEST_CASE("solve_bordered with zero right-hand side") {
  std::mt19937_64 rng(5);
  const Matrix t = random_matrix(rng, 4);
  const Vector x = test::random_simplex_point(rng, 4);
  auto sol = solve_bordered(7.0, t, x, Vector::Zero(4), 0.0);
  CHECK(sol.d.isZero(0.0));
  CHECK(sol.delta == 0.0);
}

TEST_CASE("solve_bordered matches the Gaussian-elimination oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 7;
    const Matrix t = random_matrix(rng, n);
    const Vector x = test::random_simplex_point(rng, n);
    const double lambda = u(rng) * n;
    Vector r(n);
    for (int i = 0; i < n; ++i) r[i] = u(rng);
    const double s = u(rng);
    if (bordered_diagnostics(lambda, t, x).rcond < 1e-6) continue;
    auto sol = solve_bordered(lambda, t, x, r, s);
    Vector rhs(n + 1);
    rhs << r, s;
    const Matrix j = bordered_matrix(lambda, t, x);
    const Vector oracle = test::gauss_solve(j, rhs);
    Vector got(n + 1);
    got << sol.d, sol.delta;
    CHECK((got - oracle).lpNorm<1>() <= 1e-10 * std::max(1.0, oracle.lpNorm<1>()));
    CHECK((j * got - rhs).lpNorm<1>() <= 1e-10 * (rhs.lpNorm<1>() + j.cwiseAbs().colwise().sum().maxCoeff() * got.lpNorm<1>()));
    CHECK(sol.d.sum() == doctest::Approx(s).epsilon(1e-10));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("ensure_bordered_nonsingular perturbs off a determinant root") {
  // [[l-1, 0, .5], [0, l-2, .5], [1, 1, 0]] has determinant -(2l - 3)/2, root l = 1.5.
  Matrix t(2, 2);
  t << 1, 0, 0, 2;
  const Vector x = vec({0.5, 0.5});
  CHECK(test::gauss_det(bordered_matrix(1.5, t, x)) == 0.0);
  CHECK(bordered_diagnostics(1.5, t, x).singular);
  auto fixed = ensure_bordered_nonsingular(1.5, t, x);
  CHECK(fixed.lambda == doctest::Approx(1.5 + 1.5e-8).epsilon(1e-15));
  CHECK(fixed.diagnostics.perturbation == doctest::Approx(1.5e-8).epsilon(1e-12));
  CHECK_FALSE(fixed.diagnostics.singular);
  // Idempotent on its own output.
  CHECK(ensure_bordered_nonsingular(fixed.lambda, t, x).lambda == fixed.lambda);
}

TEST_CASE("ensure_bordered_nonsingular is a no-op on nonsingular input") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 5;
    const Matrix t = random_matrix(rng, n);
    const Vector x = test::random_simplex_point(rng, n);
    const double lambda = 2.0 * n;
    // Oracle: direct rcond of the assembled matrix via its explicit inverse.
    const Matrix j = bordered_matrix(lambda, t, x);
    const double rc = 1.0 / (j.cwiseAbs().colwise().sum().maxCoeff() *
                             j.inverse().cwiseAbs().colwise().sum().maxCoeff());
    REQUIRE(rc > 1e-6);
    auto out = ensure_bordered_nonsingular(lambda, t, x);
    CHECK(out.lambda == lambda);
    CHECK(out.diagnostics.perturbation == 0.0);
  }
}

TEST_CASE("ensure_bordered_nonsingular gives up on a hopeless border") {
  // e^T x = 0 and T = 0: the bordered matrix [[lI, x], [e^T, 0]] has
  // determinant -l^{n-1} e^T x = 0 for every lambda.
  const Vector x = vec({1, -1});
  try {
    ensure_bordered_nonsingular(1.0, Matrix::Zero(2, 2), x);
    FAIL("expected PerturbationExhausted");
  } catch (const SingularSystemError& e) {
    CHECK(e.code() == Errc::PerturbationExhausted);
  }
}

TEST_CASE("bordered determinant is a polynomial of degree n-1 in lambda") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const Matrix t = random_matrix(rng, n);
    const Vector x = test::random_simplex_point(rng, n);
    // Fit through n points, test at one more.
    Matrix v(n, n);
    Vector d(n);
    for (int i = 0; i < n; ++i) {
      const double l = -1.0 + 0.5 * i;
      for (int p = 0; p < n; ++p) v(i, p) = std::pow(l, p);
      d[i] = bordered_determinant(l, t, x);
    }
    const Vector coef = test::gauss_solve(v, d);
    const double probe = 3.7;
    double fit = 0.0;
    for (int p = n - 1; p >= 0; --p) fit = fit * probe + coef[p];
    CHECK(bordered_determinant(probe, t, x) == doctest::Approx(fit).epsilon(1e-8));
    // Leading coefficient is -1 (determinant ~ -lambda^{n-1}).
    CHECK(coef[n - 1] == doctest::Approx(-1.0).epsilon(1e-8));
  }
}
