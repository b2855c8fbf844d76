#include "hk/apolar.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hk {

namespace {

using Expo = std::vector<int>;  // exponent vector, length b

/// Monomials of fixed degree in graded-lex order (earlier variables first).
void enumerate(int b, int deg, Expo& cur, int pos, std::vector<Expo>& out) {
  if (pos == b - 1) {
    cur[pos] = deg;
    out.push_back(cur);
    return;
  }
  for (int e = deg; e >= 0; --e) {
    cur[pos] = e;
    enumerate(b, deg - e, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

std::vector<Expo> monomials(int b, int deg) {
  std::vector<Expo> out;
  Expo cur(b, 0);
  enumerate(b, deg, cur, 0, out);
  return out;
}

using Poly = std::map<Expo, Rat>;

Poly poly_mul(const Poly& f, const Poly& g) {
  Poly out;
  for (const auto& [ef, cf] : f)
    for (const auto& [eg, cg] : g) {
      Expo e(ef.size());
      for (size_t k = 0; k < e.size(); ++k) e[k] = ef[k] + eg[k];
      out[e] += cf * cg;
    }
  return out;
}

Rat factorial(int n) {
  Rat f(1);
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// <u, F> for a monomial u of the same degree as F: u(d/dy)F as a constant.
Rat contract_full(const Poly& f, const Expo& e) {
  auto it = f.find(e);
  if (it == f.end()) return Rat(0);
  Rat c = it->second;
  for (int k : e) c *= factorial(k);
  return c;
}

struct DegreeData {
  std::vector<Expo> all;           // monomials of S^i
  std::vector<int> pivots;         // indices into `all` giving the quotient basis
  QMat pivot_rows;                 // catalecticant rows of the pivot monomials
};

}  // namespace

QMat diag_form(const std::vector<int>& entries) {
  int n = static_cast<int>(entries.size());
  QMat q(n, n);
  for (int i = 0; i < n; ++i) q(i, i) = entries[i];
  return q;
}

GradedAlgebra apolar_model(const ModelSpec& spec) {
  const int b = spec.b, m = spec.m;
  if (b < 4 || m < 1) throw Error("InertiaMismatch", "need b >= 4 and m >= 1");
  if (!spec.q.is_symmetric() || spec.q.rows() != b)
    throw Error("DegenerateQ", "q must be a symmetric b x b matrix");
  Inertia in = inertia_exact(spec.q);
  if (in.n_zero != 0) throw Error("DegenerateQ", "q is degenerate");
  if (in.n_pos != 3 || in.n_neg != b - 3)
    throw Error("InertiaMismatch",
                "q has inertia " + to_string(in) + ", expected (3," + std::to_string(b - 3) + ",0)");

  // socle generator F = (dual quadratic form)^m in the dual variables
  QMat qinv = *inverse(spec.q);
  Poly qdual;
  for (int i = 0; i < b; ++i)
    for (int j = i; j < b; ++j) {
      Expo e(b, 0);
      e[i] += 1;
      e[j] += 1;
      Rat c = qinv(i, j);
      if (i != j) c *= 2;
      if (!is_zero(c)) qdual[e] += c;
    }
  Poly f = qdual;
  for (int k = 1; k < m; ++k) f = poly_mul(f, qdual);

  // per polynomial degree i: catalecticant against S^{2m-i}, pivot monomials
  std::vector<DegreeData> deg(2 * m + 1);
  std::vector<std::vector<Expo>> dual_mons(2 * m + 1);
  for (int i = 0; i <= 2 * m; ++i) dual_mons[i] = monomials(b, i);
  auto cat_row = [&](const Expo& u, int i) {
    const auto& cols = dual_mons[2 * m - i];
    QVec row(cols.size());
    for (size_t c = 0; c < cols.size(); ++c) {
      Expo e(b);
      for (int k = 0; k < b; ++k) e[k] = u[k] + cols[c][k];
      row[c] = contract_full(f, e);
    }
    return row;
  };
  for (int i = 0; i <= 2 * m; ++i) {
    deg[i].all = dual_mons[i];
    int ncols = static_cast<int>(dual_mons[2 * m - i].size());
    QMat sel(0, ncols);
    std::vector<QVec> rows;
    for (size_t r = 0; r < deg[i].all.size(); ++r) {
      QVec row = cat_row(deg[i].all[r], i);
      rows.push_back(row);
      QMat trial = from_rows(rows, ncols);
      if (rref(trial) == static_cast<int>(rows.size())) {
        deg[i].pivots.push_back(static_cast<int>(r));
      } else {
        rows.pop_back();
      }
    }
    deg[i].pivot_rows = from_rows(rows, ncols);
  }

  GradedAlgebra a;
  a.top_degree = 4 * m;
  a.dims.assign(4 * m + 1, 0);
  for (int i = 0; i <= 2 * m; ++i) a.dims[2 * i] = static_cast<int>(deg[i].pivots.size());

  // coordinates of an S^i monomial over the degree-i quotient basis
  auto reduce_monomial = [&](int i, const Expo& u) {
    QVec row = cat_row(u, i);
    auto sol = solve(deg[i].pivot_rows.transpose(), row);
    if (!sol) throw Error("InternalError", "catalecticant reduction failed");
    return *sol;
  };

  for (int i = 0; i <= 2 * m; ++i)
    for (int j = i; i + j <= 2 * m; ++j) {
      int ni = a.dims[2 * i], nj = a.dims[2 * j], nk = a.dims[2 * (i + j)];
      if (ni == 0 || nj == 0 || nk == 0) continue;
      QMat t(ni * nj, nk);
      for (int alpha = 0; alpha < ni; ++alpha)
        for (int beta = 0; beta < nj; ++beta) {
          const Expo& u = deg[i].all[deg[i].pivots[alpha]];
          const Expo& v = deg[j].all[deg[j].pivots[beta]];
          Expo w(b);
          for (int k = 0; k < b; ++k) w[k] = u[k] + v[k];
          QVec c = reduce_monomial(i + j, w);
          for (int g = 0; g < nk; ++g) t(alpha * nj + beta, g) = c[g];
        }
      a.mult[{2 * i, 2 * j}] = std::move(t);
    }

  // trace lambda(p) = p(d/dy)F / (2m)!
  const Expo& top = deg[2 * m].all[deg[2 * m].pivots[0]];
  a.trace = {contract_full(f, top) / factorial(2 * m)};
  a.reference_form = spec.q;
  a.meta["construction"] = "apolar";
  a.meta["b"] = std::to_string(b);
  a.meta["m"] = std::to_string(m);
  return a;
}

GradedAlgebra standard_model(int b, int m) {
  std::vector<int> d(b, -1);
  d[0] = d[1] = d[2] = 1;
  ModelSpec spec{b, m, diag_form(d)};
  return apolar_model(spec);
}

Rat matching_sum(const QMat& q, const std::vector<QVec>& xs) {
  int n = static_cast<int>(xs.size());
  if (n % 2) throw Error("SchemaError", "matching sum needs an even tuple");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  // recursive pairing: match the first free index with each later one
  std::function<Rat(std::vector<int>&)> go = [&](std::vector<int>& free) -> Rat {
    if (free.empty()) return Rat(1);
    Rat acc(0);
    int a = free[0];
    for (size_t k = 1; k < free.size(); ++k) {
      int c = free[k];
      std::vector<int> rest;
      for (size_t l = 1; l < free.size(); ++l)
        if (l != k) rest.push_back(free[l]);
      acc += form_eval(q, xs[a], xs[c]) * go(rest);
    }
    return acc;
  };
  return go(idx);
}

Rat trace_of_product(const GradedAlgebra& a, const std::vector<QVec>& xs) {
  if (xs.empty()) throw Error("SchemaError", "empty product");
  QVec acc = xs[0];
  int degree = 2;
  for (size_t k = 1; k < xs.size(); ++k) {
    acc = a.mult_vec(degree, acc, 2, xs[k]);
    degree += 2;
  }
  if (degree != a.top_degree)
    throw Error("SchemaError", "product does not land in the top component");
  return a.trace_of(acc);
}

IntegralLattice make_lattice(const QMat& gram) {
  if (!gram.is_symmetric()) throw Error("InertiaMismatch", "gram must be symmetric");
  for (const Rat& x : gram.data())
    if (x.get_den() != 1) throw Error("InertiaMismatch", "gram must be integral");
  Inertia in = inertia_exact(gram);
  int b = gram.rows();
  if (in.n_pos != 3 || in.n_neg != b - 3 || in.n_zero != 0)
    throw Error("InertiaMismatch",
                "lattice inertia " + to_string(in) + ", expected (3," + std::to_string(b - 3) + ",0)");
  return {b, gram};
}

}  // namespace hk
