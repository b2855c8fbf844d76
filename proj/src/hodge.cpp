#include "hk/hodge.hpp"

#include <algorithm>

namespace hk {

namespace {

const QMat& require_q(const GradedAlgebra& a) {
  if (!a.reference_form)
    throw Error("DegenerateQ", "model has no reference form; triples are undefined");
  return *a.reference_form;
}

/// lambda(u . v . x^{2m-2}) for degree-2 arguments
Rat hr_value(const GradedAlgebra& a, const QVec& u, const QVec& v, const QVec& x) {
  std::vector<QVec> xs{u, v};
  int reps = a.top_degree / 2 - 2;
  for (int k = 0; k < reps; ++k) xs.push_back(x);
  QVec acc = xs[0];
  int degree = 2;
  for (size_t k = 1; k < xs.size(); ++k) {
    acc = a.mult_vec(degree, acc, 2, xs[k]);
    degree += 2;
  }
  return a.trace_of(acc);
}

std::vector<std::vector<int>> exponents(int b, int deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(b, 0);
  // graded-lex, earlier variables first
  auto rec = [&](auto&& self, int pos, int rest) -> void {
    if (pos == b - 1) {
      cur[pos] = rest;
      out.push_back(cur);
      cur[pos] = 0;
      return;
    }
    for (int e = rest; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, rest - e);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, deg);
  return out;
}

std::vector<int> expand_multiset(const std::vector<int>& expo) {
  std::vector<int> idx;
  for (size_t k = 0; k < expo.size(); ++k)
    for (int r = 0; r < expo[k]; ++r) idx.push_back(static_cast<int>(k));
  return idx;
}

/// permanent of the pairing matrix: the polarized symmetric-power form
Rat sym_power_pairing(const QMat& g, const std::vector<int>& us, const std::vector<int>& vs) {
  int n = static_cast<int>(us.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  Rat acc(0);
  do {
    Rat term(1);
    for (int i = 0; i < n; ++i) term *= g(us[i], vs[perm[i]]);
    acc += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

Subspace<Rat> block_kernel(const QMat& blk) { return Subspace<Rat>::span(kernel(blk)); }

}  // namespace

bool d_member(const QMat& q, const QVec& x, const QVec& y, const QVec& z) {
  Rat xx = form_eval(q, x, x);
  return is_zero(form_eval(q, x, y)) && is_zero(form_eval(q, x, z)) &&
         is_zero(form_eval(q, y, z)) && xx == form_eval(q, y, y) &&
         xx == form_eval(q, z, z) && sgn(xx) > 0;
}

HKTriple make_hk_triple(const GradedAlgebra& a, const QVec& x, const QVec& y, const QVec& z) {
  const QMat& q = require_q(a);
  if (!d_member(q, x, y, z))
    throw Error("SamplerExhausted", "classes do not satisfy the membership equations");
  QMat span(3, a.dim(2));
  span.set_row(0, x);
  span.set_row(1, y);
  span.set_row(2, z);
  if (rank_of(span) != 3)
    throw Error("SamplerExhausted", "triple does not span a 3-plane");
  HKTriple t;
  t.x = x;
  t.y = y;
  t.z = z;
  for (const QVec* v : {&t.x, &t.y, &t.z})
    if (!lefschetz_type(a, *v))
      throw Error("SamplerExhausted", "triple class is not of Lefschetz type");
  t.lx = mult_operator(a, x);
  t.ly = mult_operator(a, y);
  t.lz = mult_operator(a, z);
  t.dx = lefschetz_dual(a, x);
  t.dy = lefschetz_dual(a, y);
  t.dz = lefschetz_dual(a, z);
  return t;
}

std::vector<HKTriple> sample_hk_triples(const GradedAlgebra& a, int count, std::uint64_t seed) {
  const QMat& q = require_q(a);
  int b = a.dim(2);
  SplitMix64 rng(seed);

  // base triple: greedy q-orthogonal positive vectors, norms equalized by
  // rational square scaling
  std::vector<QVec> base;
  auto try_vector = [&](QVec cand) -> bool {
    for (const QVec& prev : base) {
      Rat c = form_eval(q, cand, prev) / form_eval(q, prev, prev);
      cand = vec_sub(cand, scaled(prev, c));
    }
    if (sgn(form_eval(q, cand, cand)) <= 0) return false;
    base.push_back(cand);
    return true;
  };
  for (int k = 0; k < b && base.size() < 3; ++k) {
    QVec e(b);
    e[k] = 1;
    try_vector(e);
  }
  for (int step = 0; step < 200 && base.size() < 3; ++step) {
    QVec v(b);
    for (int k = 0; k < b; ++k) v[k] = rng.rat(3);
    try_vector(v);
  }
  if (base.size() < 3)
    throw Error("SamplerExhausted", "no positive 3-plane found in A_2");
  Rat s0 = form_eval(q, base[0], base[0]);
  for (int k = 1; k < 3; ++k) {
    Rat sk = form_eval(q, base[k], base[k]);
    auto scale = rat_sqrt(s0 / sk);
    if (!scale)
      throw Error("SamplerExhausted", "norms of the base triple are not square-equalizable");
    base[k] = scaled(base[k], *scale);
  }

  std::vector<HKTriple> out;
  out.push_back(make_hk_triple(a, base[0], base[1], base[2]));
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 100 * count)
      throw Error("SamplerExhausted", "triple sampling kept failing");
    // G-antisymmetric S = q^{-1} K with K antisymmetric
    QMat k(b, b);
    for (int i = 0; i < b; ++i)
      for (int j = i + 1; j < b; ++j) {
        k(i, j) = rng.rat(2);
        k(j, i) = -k(i, j);
      }
    QMat s = *inverse(q) * k;
    QMat id = QMat::identity(b);
    if (!inverse(QMat(id + s))) continue;
    QMat r = cayley_orthogonal(q, s);
    try {
      out.push_back(make_hk_triple(a, r * base[0], r * base[1], r * base[2]));
    } catch (const Error&) {
      continue;
    }
  }
  return out;
}

LieSpan so5_closure(const GradedAlgebra& a, const HKTriple& t) {
  return lie_closure(a, {t.lx, t.dx, t.ly, t.dy, t.lz, t.dz});
}

QMat weil_operator(const GradedAlgebra& a, const HKTriple& t, const RatDir& dir) {
  if (dir.a * dir.a + dir.b * dir.b + dir.c * dir.c != Rat(1))
    throw Error("IrrationalDirection", "direction must be a rational unit vector");
  const QMat& q = require_q(a);
  int b = a.dim(2);

  // frame coordinates: columns x, y, z, then the q-orthocomplement
  QMat span(3, b);
  span.set_row(0, t.x);
  span.set_row(1, t.y);
  span.set_row(2, t.z);
  Subspace<Rat> inv = orth_complement(q, Subspace<Rat>::span(span));
  QMat tmat(b, b);
  for (int i = 0; i < b; ++i) {
    tmat(i, 0) = t.x[i];
    tmat(i, 1) = t.y[i];
    tmat(i, 2) = t.z[i];
    for (int j = 0; j < inv.dim(); ++j) tmat(i, 3 + j) = inv.basis()(j, i);
  }
  // on the triple plane: -2 times the cross product with the direction
  QMat w2f(b, b);
  w2f(0, 1) = 2 * dir.c;  w2f(0, 2) = -2 * dir.b;
  w2f(1, 0) = -2 * dir.c; w2f(1, 2) = 2 * dir.a;
  w2f(2, 0) = 2 * dir.b;  w2f(2, 1) = -2 * dir.a;
  QMat w2 = tmat * w2f * *inverse(tmat);

  int n = a.total_dim(), td = a.top_degree;
  QMat w(n, n);
  {
    int o = a.offset(2);
    for (int r = 0; r < b; ++r)
      for (int c = 0; c < b; ++c) w(o + r, o + c) = w2(r, c);
  }

  // extend degree by degree through generating products
  std::map<int, QMat> per_degree;
  per_degree[0] = QMat(1, 1);
  per_degree[2] = w2;
  for (int i = 2; i + 2 <= td; i += 2) {
    int nt = a.dim(i + 2);
    if (nt == 0) continue;
    std::vector<QVec> pivot_cols, dcols;
    for (int alpha = 0; alpha < a.dim(2) && static_cast<int>(pivot_cols.size()) < nt; ++alpha)
      for (int beta = 0; beta < a.dim(i); ++beta) {
        QVec col = a.mult_basis(2, alpha, i, beta);
        std::vector<QVec> trial = pivot_cols;
        trial.push_back(col);
        QMat tm = from_rows(trial, nt);
        if (rref(tm) != static_cast<int>(trial.size())) continue;
        pivot_cols.push_back(col);
        // image of the Leibniz candidate on this product
        QVec ea(a.dim(2));
        ea[alpha] = 1;
        QVec eb(a.dim(i));
        eb[beta] = 1;
        QVec wa = per_degree[2] * ea;
        QVec wb = per_degree[i] * eb;
        dcols.push_back(vec_add(a.mult_vec(2, wa, i, eb), a.mult_vec(2, ea, i, wb)));
        if (static_cast<int>(pivot_cols.size()) == nt) break;
      }
    if (static_cast<int>(pivot_cols.size()) != nt)
      throw Error("LeibnizInconsistent", "algebra is not generated in degree 2");
    QMat p(nt, nt), d(nt, nt);
    for (int c = 0; c < nt; ++c)
      for (int r = 0; r < nt; ++r) {
        p(r, c) = pivot_cols[c][r];
        d(r, c) = dcols[c][r];
      }
    QMat wt = d * *inverse(p);
    per_degree[i + 2] = wt;
    int o = a.offset(i + 2);
    for (int r = 0; r < nt; ++r)
      for (int c = 0; c < nt; ++c) w(o + r, o + c) = wt(r, c);
  }

  // Leibniz consistency on every basis pair
  for (int i = 0; i <= td; i += 2)
    for (int j = i; i + j <= td; j += 2) {
      if (a.dim(i) == 0 || a.dim(j) == 0 || a.dim(i + j) == 0) continue;
      for (int alpha = 0; alpha < a.dim(i); ++alpha)
        for (int beta = 0; beta < a.dim(j); ++beta) {
          QVec ea(a.dim(i));
          ea[alpha] = 1;
          QVec eb(a.dim(j));
          eb[beta] = 1;
          QVec lhs = per_degree.count(i + j) ? per_degree[i + j] * a.mult_basis(i, alpha, j, beta)
                                             : QVec(a.dim(i + j));
          QVec wa = per_degree.count(i) ? per_degree[i] * ea : QVec(a.dim(i));
          QVec wb = per_degree.count(j) ? per_degree[j] * eb : QVec(a.dim(j));
          QVec rhs = vec_add(a.mult_vec(i, wa, j, eb), a.mult_vec(i, ea, j, wb));
          if (lhs != rhs)
            throw Error("LeibnizInconsistent", "Weil operator fails the Leibniz rule");
        }
    }
  return w;
}

QMat casimir_operator(const GradedAlgebra& a, const HKTriple& t) {
  QMat wi = weil_operator(a, t, {Rat(1), Rat(0), Rat(0)});
  QMat wj = weil_operator(a, t, {Rat(0), Rat(1), Rat(0)});
  QMat wk = weil_operator(a, t, {Rat(0), Rat(0), Rat(1)});
  QMat c = Rat(-1) * (wi * wi + wj * wj + wk * wk);
  // calibration: weight 2 on the triple plane means eigenvalue 8
  QMat c2 = endo_block(a, c, 2, 2);
  for (const QVec* v : {&t.x, &t.y, &t.z})
    if (c2 * *v != scaled(*v, Rat(8)))
      throw Error("NonIntegralSpectrum", "Casimir calibration failed on the triple plane");
  return c;
}

std::vector<IsotypicBlock> su2_isotypic(const GradedAlgebra& a, const HKTriple& t) {
  QMat c = casimir_operator(a, t);
  std::vector<IsotypicBlock> blocks;
  for (int i = 0; i <= a.top_degree; i += 2) {
    int ni = a.dim(i);
    if (ni == 0) continue;
    QMat blk = endo_block(a, c, i, i);
    int covered = 0;
    for (int w = i % 2 ? 1 : 0; w <= i; w += 2) {
      QMat shifted = blk;
      Rat eig(w * (w + 2));
      for (int r = 0; r < ni; ++r) shifted(r, r) -= eig;
      Subspace<Rat> ker = block_kernel(shifted);
      if (ker.dim() == 0) continue;
      covered += ker.dim();
      blocks.push_back({i, w, ker});
    }
    if (covered != ni)
      throw Error("NonIntegralSpectrum",
                  "Casimir spectrum escapes the admissible weights in degree " + std::to_string(i));
  }
  return blocks;
}

QMat bb_extract(const GradedAlgebra& a, const HKTriple& t) {
  int b = a.dim(2);
  QMat wi = endo_block(a, weil_operator(a, t, {Rat(1), Rat(0), Rat(0)}), 2, 2);
  QMat wj = endo_block(a, weil_operator(a, t, {Rat(0), Rat(1), Rat(0)}), 2, 2);
  QMat wk = endo_block(a, weil_operator(a, t, {Rat(0), Rat(0), Rat(1)}), 2, 2);
  QMat stacked(3 * b, b);
  for (int r = 0; r < b; ++r)
    for (int c = 0; c < b; ++c) {
      stacked(r, c) = wi(r, c);
      stacked(b + r, c) = wj(r, c);
      stacked(2 * b + r, c) = wk(r, c);
    }
  Subspace<Rat> hinv = block_kernel(stacked);
  if (hinv.dim() != b - 3)
    throw Error("InternalError", "SU(2)-invariant part has unexpected dimension");

  Rat common = hr_value(a, t.y, t.y, t.x);
  QMat gframe(b, b);
  for (int k = 0; k < 3; ++k) gframe(k, k) = common;
  for (int i = 0; i < hinv.dim(); ++i)
    for (int j = i; j < hinv.dim(); ++j) {
      Rat v = hr_value(a, hinv.basis().row(i), hinv.basis().row(j), t.x);
      gframe(3 + i, 3 + j) = v;
      gframe(3 + j, 3 + i) = v;
    }
  QMat tmat(b, b);
  for (int i = 0; i < b; ++i) {
    tmat(i, 0) = t.x[i];
    tmat(i, 1) = t.y[i];
    tmat(i, 2) = t.z[i];
    for (int j = 0; j < hinv.dim(); ++j) tmat(i, 3 + j) = hinv.basis()(j, i);
  }
  QMat tinv = *inverse(tmat);
  return tinv.transpose() * gframe * tinv;
}

GradedPairing generalized_pairing(const GradedAlgebra& a, const HKTriple& t) {
  int m = a.top_degree / 4;
  int b = a.dim(2);
  QMat bb = bb_extract(a, t);
  GradedPairing gp;
  std::map<int, QMat> forms;

  for (int i = 0; i <= m; ++i) {
    int ni = a.dim(2 * i);
    auto mons = exponents(b, i);
    int nmon = static_cast<int>(mons.size());
    // multiplication S^i(A_2) -> A_{2i}
    QMat mu(ni, nmon);
    std::vector<std::vector<int>> sets(nmon);
    for (int c = 0; c < nmon; ++c) {
      sets[c] = expand_multiset(mons[c]);
      QVec acc(a.dim(0));
      acc[0] = 1;
      int deg = 0;
      for (int idx : sets[c]) {
        QVec e(b);
        e[idx] = 1;
        acc = a.mult_vec(deg, acc, 2, e);
        deg += 2;
      }
      for (int r = 0; r < ni; ++r) mu(r, c) = acc[r];
    }
    // symmetric power of the BB form on the monomial basis
    QMat gi(nmon, nmon);
    for (int r = 0; r < nmon; ++r)
      for (int c = r; c < nmon; ++c) {
        gi(r, c) = sym_power_pairing(bb, sets[r], sets[c]);
        gi(c, r) = gi(r, c);
      }
    QMat kerm = kernel(mu);
    QMat perp = kerm.rows() ? kernel(QMat(kerm * gi)) : QMat::identity(nmon);
    if (perp.rows() != ni)
      throw Error("IndefiniteBlock", "symmetric power form degenerates on the kernel");
    QMat c = mu * perp.transpose();
    auto cinv = inverse(c);
    if (!cinv)
      throw Error("IndefiniteBlock", "kernel and its orthogonal complement overlap");
    QMat gsub = perp * gi * perp.transpose();
    forms[2 * i] = cinv->transpose() * gsub * *cinv;
  }
  for (int i = m + 1; i <= 2 * m; ++i) {
    int ni = a.dim(2 * i), nj = a.dim(4 * m - 2 * i);
    QMat pi(ni, nj);
    for (int alpha = 0; alpha < ni; ++alpha)
      for (int beta = 0; beta < nj; ++beta)
        pi(alpha, beta) = a.trace_of(a.mult_basis(2 * i, alpha, 4 * m - 2 * i, beta));
    forms[2 * i] = pi * *inverse(forms[4 * m - 2 * i]) * pi.transpose();
  }

  // verification: on every isotypic block the form is definite with sign
  // (-1)^{(2i-w)/2}, blocks are mutually orthogonal, and the form is
  // non-degenerate per degree
  auto blocks = su2_isotypic(a, t);
  for (const auto& [deg, form] : forms) {
    int ni = a.dim(deg);
    if (rank_of(form) != ni)
      throw Error("IndefiniteBlock", "pairing degenerates in degree " + std::to_string(deg));
    std::vector<const IsotypicBlock*> here;
    int total = 0;
    for (const auto& blk : blocks)
      if (blk.degree == deg) {
        here.push_back(&blk);
        total += blk.space.dim();
      }
    if (total != ni)
      throw Error("IndefiniteBlock", "isotypic blocks do not span degree " + std::to_string(deg));
    for (size_t r = 0; r < here.size(); ++r) {
      QMat gram = here[r]->space.basis() * form * here[r]->space.basis().transpose();
      Inertia in = inertia_exact(gram);
      int expect_sign = ((deg - here[r]->weight) / 2) % 2 ? -1 : 1;
      bool definite = in.n_zero == 0 && (in.n_pos == 0 || in.n_neg == 0);
      int got_sign = in.n_pos > 0 ? 1 : -1;
      if (!definite || got_sign != expect_sign)
        throw Error("IndefiniteBlock", "block (deg " + std::to_string(deg) + ", w " +
                                           std::to_string(here[r]->weight) + ") has inertia " +
                                           to_string(in));
      for (size_t r2 = r + 1; r2 < here.size(); ++r2) {
        QMat cross = here[r]->space.basis() * form * here[r2]->space.basis().transpose();
        if (!cross.all_zero())
          throw Error("IndefiniteBlock", "isotypic blocks are not orthogonal for the pairing");
      }
    }
  }
  for (const auto& [deg, form] : forms) {
    gp.degrees.push_back(deg);
    gp.forms.push_back(form);
  }
  return gp;
}

LieSpan mumford_tate_algebra(const GradedAlgebra& a, const std::vector<HKTriple>& triples,
                             const std::vector<RatDir>& dirs) {
  if (triples.size() < 2 || dirs.size() < 3)
    throw Error("SamplerExhausted", "need at least 2 triples and 3 directions");
  std::vector<QMat> gens;
  for (const auto& t : triples)
    for (const auto& d : dirs) gens.push_back(weil_operator(a, t, d));
  return lie_closure(a, gens);
}

DegreeZeroMatch degree_zero_match(const LieSpan& ga, const LieSpan& gm) {
  const GradedAlgebra& a = ga.algebra();
  LieSpan g0(&a);
  for (const auto& [deg, bucket] : ga.graded_parts()) {
    if (deg != 0) continue;
    for (const QMat& mtx : bucket) g0.insert(mtx);
  }
  LieSpan rhs(&a);
  for (const QMat& mtx : gm.basis()) rhs.insert(mtx);
  rhs.insert(grading_operator(a));
  DegreeZeroMatch out;
  out.dim_g0 = g0.dim();
  out.dim_gm_h = rhs.dim();
  out.equal = g0.same_span(rhs);
  out.note =
      "comparison uses span(H) in place of span(Id): the closure is generated by "
      "traceless operators, so Id cannot appear; H is the degree-zero substitute";
  return out;
}

std::vector<RatDir> standard_directions(int count) {
  std::vector<RatDir> all = {
      {Rat(1), Rat(0), Rat(0)},
      {Rat(0), Rat(1), Rat(0)},
      {Rat(0), Rat(0), Rat(1)},
      {Rat(3, 5), Rat(4, 5), Rat(0)},
      {Rat(0), Rat(3, 5), Rat(4, 5)},
      {Rat(4, 5), Rat(0), Rat(3, 5)},
      {Rat(5, 13), Rat(12, 13), Rat(0)},
      {Rat(1, 3), Rat(2, 3), Rat(2, 3)},
  };
  if (count > static_cast<int>(all.size())) count = static_cast<int>(all.size());
  return std::vector<RatDir>(all.begin(), all.begin() + count);
}

}  // namespace hk
