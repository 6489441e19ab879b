#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "zeig/error.hpp"

namespace zeig {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// One stored coefficient A(i1, ..., im). Indices are 1-based, as in the
/// tensor file format.
struct Entry {
  std::vector<int> index;
  double value = 0.0;
};

/// Nonnegative order-m, dimension-n tensor in coordinate form. Entries not
/// stored are zero. Immutable once built, so it can be shared freely across
/// concurrent solves.
class Tensor {
 public:
  /// Validates and stores the entries. Throws Error with BadShape, BadArity,
  /// NegativeEntry, NonFiniteEntry, IndexOutOfRange or DuplicateIndexTuple.
  Tensor(int order, int dim, std::span<const Entry> entries);
  Tensor(int order, int dim, std::initializer_list<Entry> entries)
      : Tensor(order, dim, std::span<const Entry>(entries.begin(), entries.size())) {}

  int order() const noexcept { return order_; }
  int dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  /// 0-based index tuple of the k-th stored entry.
  std::span<const int> index(std::size_t k) const {
    return {indices_.data() + k * static_cast<std::size_t>(order_),
            static_cast<std::size_t>(order_)};
  }
  double value(std::size_t k) const { return values_[k]; }

  /// Stored entries with 1-based indices, in insertion order.
  std::vector<Entry> entries() const;

 private:
  int order_;
  int dim_;
  std::vector<int> indices_;  // nnz * order, 0-based, row-major per entry
  std::vector<double> values_;
};

/// (A x^{m-1})_i = sum over i2..im of A(i, i2, ..., im) x_{i2} ... x_{im}.
Vector apply(const Tensor& a, const Vector& x);

/// Exact Jacobian T(x)_{ij} = d (A x^{m-1})_i / d x_j. For non-symmetric
/// tensors every trailing index position contributes its own product-rule
/// term.
Matrix jacobian_T(const Tensor& a, const Vector& x);

/// || A x^{m-1} - lambda x ||_1.
double residual(const Tensor& a, const Vector& x, double lambda);

struct RatioBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// min(w/v) and max(w/v). For v > 0 this is the plain componentwise quotient
/// range. Otherwise both vectors must be nonnegative and the index-set
/// extension is used: with S1 = supp(w), S2 = supp(v), components in S1 \ S2
/// force the lower bound to 0 and enter the upper bound as bare w_i.
/// Components with |v_i| < 1e-14 ||v||_1 (likewise for w) count as zero, so a
/// v carrying such dust takes the extended branch.
RatioBounds ratio_bounds(const Vector& w, const Vector& v);

/// Ratio interval of A x^{m-1} against x.
RatioBounds ratio_bounds(const Tensor& a, const Vector& x);

/// Maps a Z1-eigenpair (||x||_1 = 1) to the matching Z2-eigenpair:
/// (x / ||x||_2, lambda / ||x||_2^{m-2}).
std::pair<Vector, double> z1_to_z2(const Vector& x, double lambda, int order);

}  // namespace zeig
