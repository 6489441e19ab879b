#include "zeig/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace zeig {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::BadShape: return "BadShape";
    case Errc::BadArity: return "BadArity";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NonFiniteEntry: return "NonFiniteEntry";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DuplicateIndexTuple: return "DuplicateIndexTuple";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NegativeInput: return "NegativeInput";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SingularShift: return "SingularShift";
    case Errc::SingularBordered: return "SingularBordered";
    case Errc::PerturbationExhausted: return "PerturbationExhausted";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::ProjectionEmpty: return "ProjectionEmpty";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string tuple_string(const std::vector<int>& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i]);
  }
  return s + ")";
}

void check_length(const Tensor& a, const Vector& x) {
  if (x.size() != a.dim()) {
    throw Error(Errc::DimensionMismatch, "vector has length " + std::to_string(x.size()) +
                                             ", tensor dimension is " + std::to_string(a.dim()));
  }
}

}  // namespace

Tensor::Tensor(int order, int dim, std::span<const Entry> entries) : order_(order), dim_(dim) {
  if (order < 2 || dim < 1) {
    throw Error(Errc::BadShape, "need m >= 2 and n >= 1, got m=" + std::to_string(order) +
                                    " n=" + std::to_string(dim));
  }
  indices_.reserve(entries.size() * static_cast<std::size_t>(order));
  values_.reserve(entries.size());
  std::set<std::vector<int>> seen;
  for (const Entry& e : entries) {
    if (e.index.size() != static_cast<std::size_t>(order)) {
      throw Error(Errc::BadArity, "index tuple " + tuple_string(e.index) + " has length " +
                                      std::to_string(e.index.size()) + ", expected " +
                                      std::to_string(order));
    }
    for (int i : e.index) {
      if (i < 1 || i > dim) {
        throw Error(Errc::IndexOutOfRange,
                    "index tuple " + tuple_string(e.index) + " outside [1," + std::to_string(dim) + "]");
      }
    }
    if (!std::isfinite(e.value)) {
      throw Error(Errc::NonFiniteEntry, "entry " + tuple_string(e.index) + " is not finite");
    }
    if (e.value < 0.0) {
      throw Error(Errc::NegativeEntry, "entry " + tuple_string(e.index) + " = " +
                                           std::to_string(e.value) + " is negative");
    }
    if (!seen.insert(e.index).second) {
      throw Error(Errc::DuplicateIndexTuple, "index tuple " + tuple_string(e.index) + " repeated");
    }
    for (int i : e.index) indices_.push_back(i - 1);
    values_.push_back(e.value);
  }
}

std::vector<Entry> Tensor::entries() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t k = 0; k < nnz(); ++k) {
    Entry e;
    for (int i : index(k)) e.index.push_back(i + 1);
    e.value = values_[k];
    out.push_back(std::move(e));
  }
  return out;
}

Vector apply(const Tensor& a, const Vector& x) {
  check_length(a, x);
  Vector y = Vector::Zero(a.dim());
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    double prod = a.value(k);
    for (std::size_t q = 1; q < idx.size(); ++q) prod *= x[idx[q]];
    y[idx[0]] += prod;
  }
  return y;
}

Matrix jacobian_T(const Tensor& a, const Vector& x) {
  check_length(a, x);
  const int m = a.order();
  Matrix t = Matrix::Zero(a.dim(), a.dim());
  // prefix[p] = x_{i2}...x_{i_p}, suffix[p] = x_{i_{p+1}}...x_{im}; products
  // that skip one position are formed without dividing, so zero components
  // are handled exactly.
  std::vector<double> prefix(m + 1), suffix(m + 1);
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    prefix[1] = 1.0;
    for (int p = 1; p < m; ++p) prefix[p + 1] = prefix[p] * x[idx[p]];
    suffix[m] = 1.0;
    for (int p = m - 1; p >= 1; --p) suffix[p] = suffix[p + 1] * x[idx[p]];
    for (int p = 1; p < m; ++p) {
      t(idx[0], idx[p]) += a.value(k) * prefix[p] * suffix[p + 1];
    }
  }
  return t;
}

double residual(const Tensor& a, const Vector& x, double lambda) {
  return (apply(a, x) - lambda * x).lpNorm<1>();
}

RatioBounds ratio_bounds(const Vector& w, const Vector& v) {
  if (w.size() != v.size()) {
    throw Error(Errc::DimensionMismatch, "ratio_bounds: w and v differ in length");
  }
  const double vnorm = v.lpNorm<1>();
  if (v.size() == 0 || vnorm == 0.0) throw Error(Errc::ZeroVector, "ratio_bounds: v = 0");

  const double v_cut = 1e-14 * vnorm;
  if ((v.array() > v_cut).all()) {
    double lo = w[0] / v[0], hi = lo;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
      lo = std::min(lo, w[i] / v[i]);
      hi = std::max(hi, w[i] / v[i]);
    }
    return {lo, hi};
  }

  if ((v.array() < 0.0).any() || (w.array() < 0.0).any()) {
    throw Error(Errc::NegativeInput, "ratio_bounds: extended definition needs w >= 0 and v >= 0");
  }
  const double w_cut = 1e-14 * w.lpNorm<1>();
  bool in_s2_any = false;
  bool outside_s2 = false;  // S1 \ (S1 n S2) nonempty
  double lo = 0.0, hi = 0.0, bare_hi = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const bool in_s1 = w[i] > w_cut;
    const bool in_s2 = v[i] > v_cut;
    if (in_s2) {
      const double r = w[i] / v[i];
      lo = in_s2_any ? std::min(lo, r) : r;
      hi = in_s2_any ? std::max(hi, r) : r;
      in_s2_any = true;
    } else if (in_s1) {
      bare_hi = outside_s2 ? std::max(bare_hi, w[i]) : w[i];
      outside_s2 = true;
    }
  }
  if (outside_s2) return {0.0, std::max(hi, bare_hi)};
  return {lo, hi};
}

RatioBounds ratio_bounds(const Tensor& a, const Vector& x) { return ratio_bounds(apply(a, x), x); }

std::pair<Vector, double> z1_to_z2(const Vector& x, double lambda, int order) {
  const double n2 = x.norm();
  if (n2 == 0.0) throw Error(Errc::ZeroVector, "z1_to_z2: x = 0");
  if (std::abs(x.lpNorm<1>() - 1.0) > 1e-12) {
    throw Error(Errc::InvalidArgument, "z1_to_z2: ||x||_1 must equal 1");
  }
  return {x / n2, lambda / std::pow(n2, order - 2)};
}

}  // namespace zeig
