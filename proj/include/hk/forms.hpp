#pragma once

#include "hk/subspace.hpp"

namespace hk {

struct Inertia {
  int n_pos = 0, n_neg = 0, n_zero = 0;
  bool operator==(const Inertia& o) const {
    return n_pos == o.n_pos && n_neg == o.n_neg && n_zero == o.n_zero;
  }
  bool operator!=(const Inertia& o) const { return !(*this == o); }
};

inline std::string to_string(const Inertia& s) {
  return "(" + std::to_string(s.n_pos) + "," + std::to_string(s.n_neg) + "," +
         std::to_string(s.n_zero) + ")";
}

/// Sylvester inertia by exact symmetric Gaussian elimination (congruence
/// transformations only). Pivot: lowest-index nonzero diagonal entry; a
/// symmetric rank-one fixup creates one if the remaining diagonal vanishes.
template <class S>
Inertia inertia_exact(Mat<S> g) {
  if (!g.is_symmetric()) throw Error("DegenerateForm", "inertia needs a symmetric matrix");
  int n = g.rows();
  std::vector<bool> done(n, false);
  Inertia res;
  for (int step = 0; step < n; ++step) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && !is_zero(g(i, i))) {
        p = i;
        break;
      }
    if (p < 0) {
      // all remaining diagonal entries vanish; look for an off-diagonal one
      int a = -1, b = -1;
      for (int i = 0; i < n && a < 0; ++i) {
        if (done[i]) continue;
        for (int j = i + 1; j < n; ++j)
          if (!done[j] && !is_zero(g(i, j))) {
            a = i;
            b = j;
            break;
          }
      }
      if (a < 0) {
        res.n_zero = n - res.n_pos - res.n_neg;
        return res;
      }
      // congruence x_a += x_b: new diagonal entry 2*g(a,b) != 0
      for (int j = 0; j < n; ++j) g(a, j) += g(b, j);
      for (int i = 0; i < n; ++i) g(i, a) += g(i, b);
      p = a;
    }
    int s = sign_of(g(p, p));
    if (s > 0) ++res.n_pos;
    else ++res.n_neg;
    for (int i = 0; i < n; ++i) {
      if (i == p || done[i] || is_zero(g(i, p))) continue;
      S f = g(i, p) / g(p, p);
      for (int j = 0; j < n; ++j) g(i, j) -= f * g(p, j);
      for (int j = 0; j < n; ++j) g(j, i) -= f * g(j, p);
    }
    done[p] = true;
  }
  res.n_zero = n - res.n_pos - res.n_neg;
  return res;
}

/// {x : G(x,u) = 0 for all u in U}. G must be non-degenerate.
template <class S>
Subspace<S> orth_complement(const Mat<S>& g, const Subspace<S>& u) {
  if (inertia_exact(g).n_zero != 0)
    throw Error("DegenerateForm", "orthogonal complement needs non-degenerate form");
  return Subspace<S>::span(kernel(Mat<S>(u.basis() * g)));
}

template <class S>
S form_eval(const Mat<S>& g, const std::vector<S>& x, const std::vector<S>& y) {
  S acc{};
  for (int i = 0; i < g.rows(); ++i) {
    if (is_zero(x[i])) continue;
    for (int j = 0; j < g.cols(); ++j)
      if (!is_zero(g(i, j)) && !is_zero(y[j])) acc += x[i] * g(i, j) * y[j];
  }
  return acc;
}

/// Cayley transform R = (I - S)(I + S)^-1 of a G-antisymmetric S;
/// satisfies R^T G R = G exactly.
template <class S>
Mat<S> cayley_orthogonal(const Mat<S>& g, const Mat<S>& s) {
  Mat<S> check = s.transpose() * g + g * s;
  if (!check.all_zero())
    throw Error("DegenerateForm", "parameter is not G-antisymmetric");
  Mat<S> id = Mat<S>::identity(s.rows());
  auto inv = inverse(Mat<S>(id + s));
  if (!inv) throw Error("SingularMatrix", "I + S is singular");
  return (id - s) * *inv;
}

/// Reflection through the non-isotropic vector u: x - 2 G(x,u)/G(u,u) u.
template <class S>
Mat<S> reflection(const Mat<S>& g, const std::vector<S>& u) {
  S nu = form_eval(g, u, u);
  if (is_zero(nu)) throw Error("DegenerateForm", "reflection vector is isotropic");
  int n = g.rows();
  Mat<S> r = Mat<S>::identity(n);
  std::vector<S> gu = g * u;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) -= S(2) * u[i] * gu[j] / nu;
  return r;
}

}  // namespace hk
