#pragma once

#include "hk/matrix.hpp"

namespace hk {

/// Linear subspace in canonical form: the basis is the unique reduced
/// row-echelon matrix of any spanning set, so equality of subspaces is
/// equality of representations.
template <class S>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span(const Mat<S>& vectors_as_rows) {
    Subspace u(vectors_as_rows.cols());
    Mat<S> m = vectors_as_rows;
    int rank = rref(m);
    u.basis_ = Mat<S>(rank, m.cols());
    for (int i = 0; i < rank; ++i) u.basis_.set_row(i, m.row(i));
    return u;
  }

  static Subspace full(int ambient) { return span(Mat<S>::identity(ambient)); }

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Mat<S>& basis() const { return basis_; }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  bool contains(const std::vector<S>& v) const {
    std::vector<S> r = v;
    for (int i = 0; i < basis_.rows(); ++i) {
      // basis rows are in RREF; eliminate on their pivot columns
      int p = pivot_col(i);
      if (p < 0 || is_zero(r[p])) continue;
      S f = r[p];
      for (int j = 0; j < ambient_; ++j) r[j] -= f * basis_(i, j);
    }
    return vec_is_zero(r);
  }

  bool contains(const Subspace& o) const {
    for (int i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_.row(i))) return false;
    return true;
  }

  Subspace sum(const Subspace& o) const {
    check_ambient(o);
    Mat<S> stack(dim() + o.dim(), ambient_);
    for (int i = 0; i < dim(); ++i) stack.set_row(i, basis_.row(i));
    for (int i = 0; i < o.dim(); ++i) stack.set_row(dim() + i, o.basis_.row(i));
    return span(stack);
  }

  /// Complement with respect to the standard dot product; the building
  /// block for intersections, not a geometric statement.
  Subspace dot_complement() const { return span(kernel(basis_)); }

  Subspace intersect(const Subspace& o) const {
    check_ambient(o);
    return dot_complement().sum(o.dot_complement()).dot_complement();
  }

 private:
  void check_ambient(const Subspace& o) const {
    if (ambient_ != o.ambient_)
      throw Error("AmbientMismatch", "subspaces live in different ambient spaces");
  }
  int pivot_col(int i) const {
    for (int j = 0; j < ambient_; ++j)
      if (!is_zero(basis_(i, j))) return j;
    return -1;
  }

  int ambient_ = 0;
  Mat<S> basis_;
};

template <class S>
Subspace<S> intersect_subspaces(const Subspace<S>& u, const Subspace<S>& w) {
  return u.intersect(w);
}

}  // namespace hk
