#include "hk/lie.hpp"

namespace hk {

namespace {

int flat_pivot(const QMat& m) {
  const auto& d = m.data();
  for (size_t i = 0; i < d.size(); ++i)
    if (!is_zero(d[i])) return static_cast<int>(i);
  return -1;
}

}  // namespace

QMat LieSpan::reduce(const QMat& m) const {
  QMat r = m;
  for (size_t k = 0; k < basis_.size(); ++k) {
    const Rat& c = r.data()[pivots_[k]];
    if (is_zero(c)) continue;
    Rat f = c;  // basis pivots are normalized to 1
    for (size_t i = 0; i < r.data().size(); ++i) {
      const Rat& b = basis_[k].data()[i];
      if (!is_zero(b)) r.data()[i] -= f * b;
    }
  }
  return r;
}

bool LieSpan::insert(const QMat& m) {
  QMat r = reduce(m);
  int p = flat_pivot(r);
  if (p < 0) return false;
  Rat inv = 1 / r.data()[p];
  for (auto& x : r.data()) x *= inv;
  // eliminate the new pivot from existing rows to keep full RREF
  for (size_t k = 0; k < basis_.size(); ++k) {
    Rat f = basis_[k].data()[p];
    if (is_zero(f)) continue;
    for (size_t i = 0; i < r.data().size(); ++i) {
      const Rat& x = r.data()[i];
      if (!is_zero(x)) basis_[k].data()[i] -= f * x;
    }
  }
  // keep rows ordered by pivot position
  size_t at = 0;
  while (at < basis_.size() && pivots_[at] < p) ++at;
  basis_.insert(basis_.begin() + at, std::move(r));
  pivots_.insert(pivots_.begin() + at, p);
  closed_ = false;
  return true;
}

std::optional<QVec> LieSpan::coordinates(const QMat& m) const {
  QMat r = m;
  QVec coeff(basis_.size());
  for (size_t k = 0; k < basis_.size(); ++k) {
    Rat f = r.data()[pivots_[k]];
    if (is_zero(f)) continue;
    coeff[k] = f;
    for (size_t i = 0; i < r.data().size(); ++i) {
      const Rat& b = basis_[k].data()[i];
      if (!is_zero(b)) r.data()[i] -= f * b;
    }
  }
  if (!r.all_zero()) return std::nullopt;
  return coeff;
}

void LieSpan::close() {
  // rounds over a snapshot: insert() rewrites representatives, so brackets
  // are taken on a copy of the spanning set per round
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<QMat> snapshot = basis_;
    for (size_t i = 0; i < snapshot.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        if (insert(bracket(snapshot[i], snapshot[j]))) grew = true;
  }
  closed_ = true;
}

bool LieSpan::same_span(const LieSpan& o) const {
  if (dim() != o.dim()) return false;
  for (int k = 0; k < dim(); ++k)
    if (basis_[k] != o.basis_[k]) return false;
  return true;
}

std::map<int, std::vector<QMat>> LieSpan::graded_parts() const {
  std::map<int, std::vector<QMat>> parts;
  for (const QMat& m : basis_) {
    for (int delta : endo_degrees(*alg_, m)) {
      QMat comp = endo_degree_part(*alg_, m, delta);
      if (!contains(comp))
        throw Error("InternalError", "graded component escapes the span");
      auto& bucket = parts[delta];
      // echelonize per degree via a scratch span
      LieSpan probe(alg_);
      for (const QMat& b : bucket) probe.insert(b);
      if (probe.insert(comp)) bucket.push_back(comp);
    }
  }
  // sanity: component dimensions add up
  int total = 0;
  for (auto& [deg, bucket] : parts) total += static_cast<int>(bucket.size());
  if (total != dim())
    throw Error("InternalError", "graded decomposition does not fill the span");
  return parts;
}

LieSpan lie_closure(const GradedAlgebra& a, const std::vector<QMat>& generators) {
  LieSpan g(&a);
  for (const QMat& m : generators) g.insert(m);
  g.close();
  return g;
}

QMat killing_gram(const LieSpan& g) {
  int k = g.dim();
  // ad matrices in basis coordinates
  std::vector<QMat> ad(k, QMat(k, k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      auto coords = g.coordinates(bracket(g.basis()[i], g.basis()[j]));
      if (!coords) throw Error("DegenerateForm", "killing form needs a closed algebra");
      for (int l = 0; l < k; ++l) ad[i](l, j) = (*coords)[l];
    }
  QMat b(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      Rat tr(0);
      QMat prod = ad[i] * ad[j];
      for (int l = 0; l < k; ++l) tr += prod(l, l);
      b(i, j) = tr;
      b(j, i) = tr;
    }
  return b;
}

Inertia killing_inertia(const LieSpan& g) { return inertia_exact(killing_gram(g)); }

std::vector<QMat> invariant_symmetric_forms(const LieSpan& g, std::optional<int> block) {
  const GradedAlgebra& a = g.algebra();
  int n = a.total_dim();
  // with a block restriction, entries outside the chosen diagonal block are
  // pinned to zero rather than being unknowns
  std::vector<int> unk(n * n, -1);
  int nunk = 0;
  auto allowed = [&](int i, int j) {
    if (!block) return true;
    int lo = a.offset(*block), hi = lo + a.dim(*block);
    return i >= lo && i < hi && j >= lo && j < hi;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (allowed(i, j)) {
        unk[i * n + j] = nunk;
        unk[j * n + i] = nunk;
        ++nunk;
      }
  QMat sys(g.dim() * n * n, nunk);
  int row = 0;
  for (const QMat& m : g.basis()) {
    // B m + m^T B = 0  componentwise: sum_k b_{ik} m(k,j) + m(k,i) b_{kj}
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          if (!is_zero(m(k, j)) && unk[i * n + k] >= 0) sys(row, unk[i * n + k]) += m(k, j);
          if (!is_zero(m(k, i)) && unk[k * n + j] >= 0) sys(row, unk[k * n + j]) += m(k, i);
        }
        ++row;
      }
  }
  QMat ker = kernel(sys);
  std::vector<QMat> out;
  for (int r = 0; r < ker.rows(); ++r) {
    QMat b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (unk[i * n + j] >= 0) b(i, j) = ker(r, unk[i * n + j]);
    out.push_back(std::move(b));
  }
  return out;
}

LieSpan structure_lie_algebra(const GradedAlgebra& a, const SamplerConfig& cfg) {
  int b = a.dim(2);
  LieSpan g(&a);
  int found = 0;
  auto add_element = [&](const QVec& v) {
    if (!lefschetz_type(a, v)) return false;
    g.insert(mult_operator(a, v));
    g.insert(lefschetz_dual(a, v));
    ++found;
    return true;
  };
  for (int k = 0; k < b; ++k) {
    QVec e(b);
    e[k] = 1;
    add_element(e);
  }
  g.close();
  SplitMix64 rng(cfg.seed);
  int stable = 0;
  for (int step = 0; step < cfg.max_extra && stable < cfg.stable_window; ++step) {
    QVec v(b);
    for (int k = 0; k < b; ++k) v[k] = rng.rat(3);
    if (!add_element(v)) continue;
    int before = g.dim();
    g.close();
    stable = g.dim() == before ? stable + 1 : 0;
  }
  if (found == 0) throw Error("NoLefschetzElement", "sampling found no Lefschetz element");
  g.close();
  return g;
}

}  // namespace hk
