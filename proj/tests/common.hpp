#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls into the factorization or step code under test.

#include <cmath>
#include <random>
#include <vector>

#include "zeig/tensor.hpp"

namespace zeig::test {

inline Tensor example1() {
  return Tensor(4, 2,
                {{{1, 1, 1, 1}, 1.1}, {{2, 2, 2, 2}, 1.2}, {{1, 1, 1, 2}, 0.25}, {{1, 2, 2, 2}, 0.25}});
}

inline Tensor example2() {
  std::vector<Entry> e;
  for (int j = 1; j <= 3; ++j) {
    e.push_back({{2, j, 3}, 1.0});
    e.push_back({{3, j, 2}, 1.0});
    e.push_back({{3, j, 3}, 1.0});
  }
  return Tensor(3, 3, e);
}

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

/// Dense evaluation of A x^{m-1} by enumerating every index tuple.
inline Vector dense_apply(const Tensor& a, const Vector& x) {
  const int m = a.order(), n = a.dim();
  std::vector<double> dense(static_cast<std::size_t>(std::pow(n, m)), 0.0);
  for (const Entry& e : a.entries()) {
    std::size_t lin = 0;
    for (int i : e.index) lin = lin * n + (i - 1);
    dense[lin] = e.value;
  }
  Vector y = Vector::Zero(n);
  for (std::size_t lin = 0; lin < dense.size(); ++lin) {
    std::size_t rest = lin;
    double prod = dense[lin];
    for (int p = m - 1; p >= 1; --p) {
      prod *= x[static_cast<Eigen::Index>(rest % n)];
      rest /= n;
    }
    y[static_cast<Eigen::Index>(rest)] += prod;
  }
  return y;
}

/// Gaussian elimination with partial pivoting on a copy of (M | b).
inline Vector gauss_solve(Matrix m, Vector b) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    }
    m.row(c).swap(m.row(piv));
    std::swap(b[c], b[piv]);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const double f = m(r, c) / m(c, c);
      for (Eigen::Index k = c; k < n; ++k) m(r, k) -= f * m(c, k);
      b[r] -= f * b[c];
    }
  }
  Vector x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (Eigen::Index k = r + 1; k < n; ++k) s -= m(r, k) * x[k];
    x[r] = s / m(r, r);
  }
  return x;
}

/// Determinant by cofactor-free elimination (same pivoting as gauss_solve).
inline double gauss_det(Matrix m) {
  const Eigen::Index n = m.rows();
  double det = 1.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    }
    if (piv != c) {
      m.row(c).swap(m.row(piv));
      det = -det;
    }
    if (m(c, c) == 0.0) return 0.0;
    det *= m(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const double f = m(r, c) / m(c, c);
      for (Eigen::Index k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

/// Bisection root of f on [lo, hi] where f changes sign.
template <class F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline Vector random_simplex_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = u(rng);
  return x / x.sum();
}

inline double rel_err(const Vector& a, const Vector& b) {
  const double scale = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace zeig::test
