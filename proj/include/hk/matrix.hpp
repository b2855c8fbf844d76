#pragma once

#include <optional>
#include <vector>

#include "hk/scalars.hpp"

namespace hk {

/// Dense matrix over an exact field scalar (Rat or QuadRat).
template <class S>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), v_(static_cast<size_t>(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  S& operator()(int i, int j) { return v_[static_cast<size_t>(i) * c_ + j]; }
  const S& operator()(int i, int j) const { return v_[static_cast<size_t>(i) * c_ + j]; }
  std::vector<S>& data() { return v_; }
  const std::vector<S>& data() const { return v_; }

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && v_ == o.v_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
      for (int j = i + 1; j < c_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  bool all_zero() const {
    for (const S& x : v_)
      if (!is_zero(x)) return false;
    return true;
  }

  std::vector<S> row(int i) const {
    return std::vector<S>(v_.begin() + static_cast<size_t>(i) * c_,
                          v_.begin() + static_cast<size_t>(i + 1) * c_);
  }

  void set_row(int i, const std::vector<S>& r) {
    for (int j = 0; j < c_; ++j) (*this)(i, j) = r[j];
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<S> v_;
};

template <class S>
Mat<S> operator+(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r(a.rows(), a.cols());
  for (size_t i = 0; i < r.data().size(); ++i) r.data()[i] = a.data()[i] + b.data()[i];
  return r;
}

template <class S>
Mat<S> operator-(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r(a.rows(), a.cols());
  for (size_t i = 0; i < r.data().size(); ++i) r.data()[i] = a.data()[i] - b.data()[i];
  return r;
}

template <class S>
Mat<S> operator*(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const S& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (is_zero(b(k, j))) continue;
        r(i, j) += aik * b(k, j);
      }
    }
  return r;
}

template <class S>
Mat<S> operator*(const S& c, const Mat<S>& a) {
  Mat<S> r(a.rows(), a.cols());
  for (size_t i = 0; i < r.data().size(); ++i) r.data()[i] = c * a.data()[i];
  return r;
}

template <class S>
std::vector<S> operator*(const Mat<S>& a, const std::vector<S>& x) {
  std::vector<S> y(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j)) && !is_zero(x[j])) y[i] += a(i, j) * x[j];
  return y;
}

template <class S>
Mat<S> bracket(const Mat<S>& a, const Mat<S>& b) {
  return a * b - b * a;
}

/// In-place reduced row echelon form. Returns the rank; pivot columns are
/// appended to *pivots when given. Deterministic: first nonzero entry wins.
template <class S>
int rref(Mat<S>& m, std::vector<int>* pivots = nullptr) {
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int pr = -1;
    for (int i = rank; i < m.rows(); ++i)
      if (!is_zero(m(i, col))) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != rank)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(rank, j));
    S inv = S(1) / m(rank, col);
    for (int j = col; j < m.cols(); ++j) m(rank, j) = inv * m(rank, j);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == rank || is_zero(m(i, col))) continue;
      S f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

template <class S>
int rank_of(Mat<S> m) {
  return rref(m);
}

/// Basis of the right kernel {x : m x = 0}, rows of the result.
template <class S>
Mat<S> kernel(Mat<S> m) {
  std::vector<int> piv;
  int rank = rref(m, &piv);
  std::vector<bool> is_piv(m.cols(), false);
  for (int c : piv) is_piv[c] = true;
  Mat<S> k(m.cols() - rank, m.cols());
  int row = 0;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    k(row, free) = S(1);
    for (int i = 0; i < rank; ++i) k(row, piv[i]) = -m(i, free);
    ++row;
  }
  return k;
}

/// Solves a x = b for a single right-hand side; nullopt when inconsistent.
/// With *unique, reports whether the solution had no free variables.
template <class S>
std::optional<std::vector<S>> solve(const Mat<S>& a, const std::vector<S>& b,
                                    bool* unique = nullptr) {
  Mat<S> aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<int> piv;
  int rank = rref(aug, &piv);
  for (int i = 0; i < rank; ++i)
    if (piv[i] == a.cols()) return std::nullopt;
  if (unique) *unique = rank == a.cols();
  std::vector<S> x(a.cols());
  for (int i = 0; i < rank; ++i) x[piv[i]] = aug(i, a.cols());
  return x;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  int n = a.rows();
  Mat<S> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = S(1);
  }
  std::vector<int> piv;
  rref(aug, &piv);
  // pivots escaping the left block mean a is singular
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(piv.size()) <= i || piv[i] != i) return std::nullopt;
  Mat<S> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class S>
Mat<S> from_rows(const std::vector<std::vector<S>>& rows, int cols) {
  Mat<S> m(static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
  return m;
}

template <class S>
std::vector<S> scaled(const std::vector<S>& v, const S& c) {
  std::vector<S> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

template <class S>
std::vector<S> vec_add(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class S>
std::vector<S> vec_sub(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class S>
bool vec_is_zero(const std::vector<S>& a) {
  for (const S& x : a)
    if (!is_zero(x)) return false;
  return true;
}

/// Lift a rational matrix into the quadratic extension.
inline Mat<QuadRat> lift(const Mat<Rat>& m, int /*d*/ = 0) {
  Mat<QuadRat> q(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) q(i, j) = QuadRat(m(i, j));
  return q;
}

}  // namespace hk
