#include "hk/twistor.hpp"

#include <algorithm>

#include <json.hpp>

namespace hk {

using json = nlohmann::ordered_json;

namespace {

KVec to_kvec(const std::vector<Rat>& v) {
  KVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = QuadRat(v[i]);
  return out;
}

QuadRat dot_form(const QMat& gram, const KVec& x, const KVec& y) {
  QuadRat acc;
  for (int i = 0; i < gram.rows(); ++i) {
    if (is_zero(x[i])) continue;
    for (int j = 0; j < gram.cols(); ++j)
      if (!is_zero(gram(i, j)) && !is_zero(y[j])) acc += x[i] * QuadRat(gram(i, j)) * y[j];
  }
  return acc;
}

KVec apply_reflection(const QMat& gram, const KVec& mirror, const KVec& x) {
  QuadRat nu = dot_form(gram, mirror, mirror);
  if (is_zero(nu)) throw Error("DegenerateForm", "isotropic mirror vector");
  QuadRat c = QuadRat(2) * dot_form(gram, x, mirror) / nu;
  KVec out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] - c * mirror[i];
  return out;
}

TwistorPlane plane_from_frame(const PeriodSpace& ps, const std::array<KVec, 3>& frame) {
  TwistorPlane w;
  w.frame = frame;
  KMat rows(3, ps.b);
  for (int i = 0; i < 3; ++i) rows.set_row(i, frame[i]);
  w.space = KSub::span(rows);
  w.norm = dot_form(ps.gram, frame[0], frame[0]);
  return w;
}

TwistorPlane reflect_plane(const PeriodSpace& ps, const KVec& mirror, const TwistorPlane& w) {
  std::array<KVec, 3> frame;
  for (int i = 0; i < 3; ++i) frame[i] = apply_reflection(ps.gram, mirror, w.frame[i]);
  return plane_from_frame(ps, frame);
}

std::optional<PeriodPoint> vertex_from_pair(const PeriodSpace& ps, const KVec& u, const KVec& v) {
  try {
    return make_period_point(ps, u, v);
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// Best-effort vertex for a consecutive pair; nullopt when the shared plane
/// has no equal-norm orthogonal pair over the scalar context.
std::optional<PeriodPoint> vertex_between(const PeriodSpace& ps, const TwistorPlane& w1,
                                          const TwistorPlane& w2) {
  IntersectResult r = lines_intersect(ps, w1, w2);
  if (!r.intersect || r.vertices.empty()) return std::nullopt;
  return r.vertices.front();
}

}  // namespace

PeriodSpace make_period_space(const QMat& gram, int d) {
  if (!gram.is_symmetric()) throw Error("DegenerateForm", "period form must be symmetric");
  Inertia in = inertia_exact(gram);
  int b = gram.rows();
  if (in.n_pos != 3 || in.n_neg != b - 3 || in.n_zero != 0)
    throw Error("InertiaMismatch",
                "period form has inertia " + to_string(in) + ", expected (3," +
                    std::to_string(b - 3) + ",0)");
  if (d != 0 && d <= 1) throw Error("FieldMismatch", "scalar context needs d = 0 or d > 1");
  return {b, gram, d};
}

KVec lift_vec(const QVec& v) { return to_kvec(v); }

QuadRat q_eval(const PeriodSpace& ps, const KVec& x, const KVec& y) {
  return dot_form(ps.gram, x, y);
}

PeriodPoint make_period_point(const PeriodSpace& ps, const KVec& u, const KVec& v) {
  QuadRat uu = q_eval(ps, u, u), vv = q_eval(ps, v, v), uv = q_eval(ps, u, v);
  if (!(uu == vv) || !is_zero(uv) || sign_of(uu) <= 0)
    throw Error("NotPositive", "period pair must be orthogonal of equal positive norm");
  KMat rows(2, ps.b);
  rows.set_row(0, u);
  rows.set_row(1, v);
  if (KSub::span(rows).dim() != 2)
    throw Error("NotPositive", "period pair must be linearly independent");
  return {u, v};
}

TwistorPlane plane_make(const PeriodSpace& ps, const KVec& x, const KVec& y, const KVec& z) {
  KMat rows(3, ps.b);
  rows.set_row(0, x);
  rows.set_row(1, y);
  rows.set_row(2, z);
  if (KSub::span(rows).dim() != 3) throw Error("NotThreeDim", "span is not 3-dimensional");
  KMat gram(3, 3);
  const KVec* vecs[3] = {&x, &y, &z};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) gram(i, j) = q_eval(ps, *vecs[i], *vecs[j]);
  Inertia in = inertia_exact(gram);
  if (in.n_pos != 3) throw Error("NotPositive", "plane is not positive definite");

  // exact Gram-Schmidt, then norm equalization by square rescaling
  std::array<KVec, 3> f{x, y, z};
  for (int i = 1; i < 3; ++i)
    for (int j = 0; j < i; ++j) {
      QuadRat c = q_eval(ps, f[i], f[j]) / q_eval(ps, f[j], f[j]);
      for (int k = 0; k < ps.b; ++k) f[i][k] -= c * f[j][k];
    }
  QuadRat s0 = q_eval(ps, f[0], f[0]);
  for (int i = 1; i < 3; ++i) {
    QuadRat si = q_eval(ps, f[i], f[i]);
    auto t = quad_sqrt(s0 / si, ps.d);
    if (!t)
      throw Error("NormMismatch",
                  "no common-norm frame over the scalar context (d = " + std::to_string(ps.d) + ")");
    for (int k = 0; k < ps.b; ++k) f[i][k] = *t * f[i][k];
  }
  return plane_from_frame(ps, f);
}

PeriodPoint period_of_induced(const PeriodSpace& ps, const TwistorPlane& w, const RatDir& dir) {
  if (dir.a * dir.a + dir.b * dir.b + dir.c * dir.c != Rat(1))
    throw Error("IrrationalDirection", "direction must be a rational unit vector");
  // rational rotation of R^3 sending e1 to the direction: reflection through
  // e1 + dir composed with the reflection fixing dir (one formula), with the
  // antipodal case handled separately
  QMat r(3, 3);
  if (dir.a == Rat(1) && is_zero(dir.b) && is_zero(dir.c)) {
    r = QMat::identity(3);
  } else if (dir.a == Rat(-1) && is_zero(dir.b) && is_zero(dir.c)) {
    r(0, 0) = -1;
    r(1, 1) = -1;
    r(2, 2) = 1;
  } else {
    // rotation by pi around the bisector of e1 and the direction
    QVec h = {Rat(1) + dir.a, dir.b, dir.c};
    Rat hh = h[0] * h[0] + h[1] * h[1] + h[2] * h[2];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = 2 * h[i] * h[j] / hh - Rat(i == j ? 1 : 0);
  }
  // columns of r express the rotated frame over the old one
  std::array<KVec, 3> g;
  for (int i = 0; i < 3; ++i) {
    g[i] = KVec(ps.b);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < ps.b; ++k) g[i][k] += QuadRat(r(j, i)) * w.frame[j][k];
  }
  return make_period_point(ps, g[1], g[2]);
}

IntersectResult lines_intersect(const PeriodSpace& ps, const TwistorPlane& w1,
                                const TwistorPlane& w2) {
  IntersectResult res;
  res.shared = w1.space.intersect(w2.space);
  res.intersect = res.shared.dim() >= 2;
  if (!res.intersect) return res;

  KVec h1, h2;
  if (res.shared.dim() == 3) {
    h1 = w1.frame[0];
    h2 = w1.frame[1];
  } else {
    h1 = res.shared.basis().row(0);
    h2 = res.shared.basis().row(1);
    QuadRat c = q_eval(ps, h2, h1) / q_eval(ps, h1, h1);
    for (int k = 0; k < ps.b; ++k) h2[k] -= c * h1[k];
  }
  QuadRat n1 = q_eval(ps, h1, h1), n2 = q_eval(ps, h2, h2);
  auto t = quad_sqrt(n1 / n2, ps.d);
  if (!t) {
    res.rational_vertex = false;
    return res;
  }
  KVec v = h2;
  for (int k = 0; k < ps.b; ++k) v[k] = *t * v[k];
  KVec vneg = v;
  for (int k = 0; k < ps.b; ++k) vneg[k] = -vneg[k];
  res.vertices.push_back(make_period_point(ps, h1, v));
  res.vertices.push_back(make_period_point(ps, h1, vneg));
  return res;
}

TwistorPath connect_planes(const PeriodSpace& ps, const TwistorPlane& w, const TwistorPlane& w2) {
  TwistorPath path;
  path.edges.push_back(w);
  if (w.space == w2.space) return path;

  auto finish = [&](const TwistorPlane& last) {
    if (path.edges.back().space != last.space) {
      path.vertices.push_back(vertex_between(ps, path.edges.back(), last));
      path.edges.push_back(last);
    }
    for (size_t i = 0; i + 1 < path.edges.size(); ++i)
      if (!lines_intersect(ps, path.edges[i], path.edges[i + 1]).intersect)
        throw Error("InternalError", "constructed path fails the intersection criterion");
    return path;
  };

  if (w.space.intersect(w2.space).dim() >= 2) return finish(w2);

  auto ratio = quad_sqrt(w2.norm / w.norm, ps.d);
  if (!ratio)
    throw Error("SearchExhausted",
                "frame norms lie in different square classes; no isometry transport");
  TwistorPlane cur = w;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < ps.b; ++k) cur.frame[i][k] = *ratio * cur.frame[i][k];
  cur.norm = cur.norm * *ratio * *ratio;

  auto step = [&](const KVec& mirror) {
    TwistorPlane next = reflect_plane(ps, mirror, cur);
    if (next.space == cur.space) {
      cur = next;  // frame may still move; keep it without a new edge
      return false;
    }
    path.vertices.push_back(vertex_between(ps, cur, next));
    path.edges.push_back(next);
    cur = next;
    return true;
  };

  // Witt transport: align frame vector 0 with w2's, then vector 1 inside its
  // orthogonal complement; each reflection shares a 2-plane with the previous
  // edge by construction.
  for (int stage = 0; stage < 2; ++stage) {
    const KVec& target = w2.frame[stage];
    KVec have = cur.frame[stage];
    if (have == target) continue;
    KVec diff(ps.b), sum(ps.b);
    for (int k = 0; k < ps.b; ++k) {
      diff[k] = have[k] - target[k];
      sum[k] = have[k] + target[k];
    }
    if (!is_zero(q_eval(ps, diff, diff))) {
      step(diff);
    } else {
      step(sum);
      step(target);
    }
    if (!(cur.frame[stage] == target))
      throw Error("InternalError", "Witt transport failed to align the frame");
    if (cur.space.intersect(w2.space).dim() >= 2) break;
  }
  return finish(w2);
}

PathCheck validate_path(const PeriodSpace& ps, const TwistorPath& path) {
  PathCheck pc;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    pc.entries.push_back({name, ok, detail});
    pc.ok = pc.ok && ok;
  };
  if (path.edges.empty()) {
    add("nonempty", false, "path has no edges");
    return pc;
  }
  for (size_t e = 0; e < path.edges.size(); ++e) {
    const TwistorPlane& w = path.edges[e];
    std::string tag = "edge_" + std::to_string(e);
    bool dim_ok = w.space.dim() == 3;
    KMat gram(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) gram(i, j) = q_eval(ps, w.frame[i], w.frame[j]);
    Inertia in = inertia_exact(gram);
    bool frame_ok = in.n_pos == 3;
    for (int i = 0; i < 3 && frame_ok; ++i) {
      if (!w.space.contains(w.frame[i])) frame_ok = false;
      for (int j = 0; j < 3; ++j) {
        if (i == j && !(gram(i, i) == w.norm)) frame_ok = false;
        if (i != j && !is_zero(gram(i, j))) frame_ok = false;
      }
    }
    add(tag, dim_ok && frame_ok && sign_of(w.norm) > 0);
  }
  for (size_t e = 0; e + 1 < path.edges.size(); ++e) {
    KSub shared = path.edges[e].space.intersect(path.edges[e + 1].space);
    add("intersection_" + std::to_string(e), shared.dim() >= 2,
        "dim = " + std::to_string(shared.dim()));
    if (e < path.vertices.size() && path.vertices[e]) {
      const PeriodPoint& x = *path.vertices[e];
      bool ok = true;
      try {
        make_period_point(ps, x.u, x.v);
      } catch (const Error&) {
        ok = false;
      }
      ok = ok && path.edges[e].space.contains(x.u) && path.edges[e].space.contains(x.v) &&
           path.edges[e + 1].space.contains(x.u) && path.edges[e + 1].space.contains(x.v);
      add("vertex_" + std::to_string(e), ok);
    }
  }
  if (path.endpoint_start)
    add("endpoint_start", path.edges.front().space.contains(path.endpoint_start->u) &&
                              path.edges.front().space.contains(path.endpoint_start->v));
  if (path.endpoint_end)
    add("endpoint_end", path.edges.back().space.contains(path.endpoint_end->u) &&
                            path.edges.back().space.contains(path.endpoint_end->v));
  return pc;
}

//------------------------------------------------------------------------------
// integral lattice side
//------------------------------------------------------------------------------

namespace {

using ZVec = std::vector<mpz_class>;
using ZRows = std::vector<ZVec>;

/// Z-basis of {x : m x = 0} via unimodular column reduction.
ZRows integer_kernel(ZRows m, int ncols) {
  std::vector<ZVec> u(ncols, ZVec(ncols, 0));
  for (int i = 0; i < ncols; ++i) u[i][i] = 1;  // u[c] is column c
  auto col_sub = [&](int dst, int src, const mpz_class& f) {
    for (auto& row : m) row[dst] -= f * row[src];
    for (int k = 0; k < ncols; ++k) u[dst][k] -= f * u[src][k];
  };
  auto col_swap = [&](int a, int b) {
    for (auto& row : m) std::swap(row[a], row[b]);
    std::swap(u[a], u[b]);
  };
  int col = 0;
  for (size_t row = 0; row < m.size() && col < ncols; ++row) {
    while (true) {
      int best = -1;
      for (int c = col; c < ncols; ++c)
        if (m[row][c] != 0 && (best < 0 || cmp(abs(m[row][c]), abs(m[row][best])) < 0)) best = c;
      if (best < 0) break;
      if (best != col) col_swap(best, col);
      bool clean = true;
      for (int c = col + 1; c < ncols; ++c) {
        if (m[row][c] == 0) continue;
        mpz_class f = m[row][c] / m[row][col];
        col_sub(c, col, f);
        if (m[row][c] != 0) clean = false;
      }
      if (clean) {
        ++col;
        break;
      }
    }
  }
  ZRows kernel;
  for (int c = col; c < ncols; ++c) kernel.push_back(u[c]);
  return kernel;
}

/// Stack the rational and sqrt(d) components of q(., vec) as integer rows.
void append_conditions(ZRows& rows, const QMat& gram, const KVec& vec) {
  int n = gram.rows();
  QVec rat(n), irr(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rat[i] += gram(i, j) * vec[j].a;
      irr[i] += gram(i, j) * vec[j].b;
    }
  for (const QVec* part : {&rat, &irr}) {
    if (vec_is_zero(*part)) continue;
    mpz_class lcm = 1;
    for (const Rat& x : *part) {
      mpz_class den = x.get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      lcm = lcm / g * den;
    }
    ZVec row(n);
    for (int i = 0; i < n; ++i) {
      Rat scaledv = (*part)[i] * Rat(lcm);
      row[i] = scaledv.get_num();
    }
    rows.push_back(std::move(row));
  }
}

NSLattice lattice_from_kernel(int ambient, const ZRows& rows) {
  NSLattice out;
  out.ambient = ambient;
  ZRows ker = integer_kernel(rows, ambient);
  out.basis = std::move(ker);
  return out;
}

Subspace<Rat> rational_span(const NSLattice& l) {
  QMat rows(l.rank(), l.ambient);
  for (int i = 0; i < l.rank(); ++i)
    for (int j = 0; j < l.ambient; ++j) rows(i, j) = Rat(l.basis[i][j]);
  return Subspace<Rat>::span(rows);
}

}  // namespace

bool ns_equal(const NSLattice& a, const NSLattice& b) {
  // both lattices are saturated, so equality of rational spans is equality
  return a.ambient == b.ambient && a.rank() == b.rank() && rational_span(a) == rational_span(b);
}

bool ns_contains(const NSLattice& outer, const NSLattice& inner) {
  return outer.ambient == inner.ambient && rational_span(outer).contains(rational_span(inner));
}

NSLattice neron_severi(const IntegralLattice& lat, const PeriodSpace& ps, const PeriodPoint& l) {
  ZRows rows;
  append_conditions(rows, ps.gram, l.u);
  append_conditions(rows, ps.gram, l.v);
  return lattice_from_kernel(lat.rank, rows);
}

NSLattice plane_perp_lattice(const IntegralLattice& lat, const PeriodSpace& ps,
                             const TwistorPlane& w) {
  ZRows rows;
  for (const KVec& f : w.frame) append_conditions(rows, ps.gram, f);
  return lattice_from_kernel(lat.rank, rows);
}

bool general_type2(const IntegralLattice& lat, const PeriodSpace& ps, const TwistorPlane& w,
                   const PeriodPoint& l) {
  if (!w.space.contains(l.u) || !w.space.contains(l.v))
    throw Error("PeriodNotOnLine", "period does not lie on the twistor line");
  NSLattice ns = neron_severi(lat, ps, l);
  NSLattice perp = plane_perp_lattice(lat, ps, w);
  if (!ns_contains(ns, perp))
    throw Error("InternalError", "plane-orthogonal lattice escapes the Neron-Severi lattice");
  return ns_equal(ns, perp);
}

AdmissibilityReport is_admissible(const IntegralLattice& lat, const PeriodSpace& ps,
                                  const TwistorPath& path) {
  AdmissibilityReport rep;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    rep.entries.push_back({name, ok, detail});
    rep.ok = rep.ok && ok;
  };
  if (!path.endpoint_start || !path.endpoint_end) {
    add("endpoints_present", false, "admissibility needs endpoint periods");
    return rep;
  }
  add("endpoint_start_general_type",
      general_type2(lat, ps, path.edges.front(), *path.endpoint_start));
  add("endpoint_end_general_type",
      general_type2(lat, ps, path.edges.back(), *path.endpoint_end));
  for (size_t i = 0; i < path.vertices.size(); ++i) {
    std::string tag = "vertex_" + std::to_string(i);
    if (!path.vertices[i]) {
      add(tag, false, "vertex missing");
      continue;
    }
    add(tag + "_left", general_type2(lat, ps, path.edges[i], *path.vertices[i]));
    add(tag + "_right", general_type2(lat, ps, path.edges[i + 1], *path.vertices[i]));
  }
  return rep;
}

//------------------------------------------------------------------------------
// seeded walks
//------------------------------------------------------------------------------

namespace {

QuadRat seeded_scalar(SplitMix64& rng, unsigned height, int d, bool force_irrational) {
  Rat a = rng.rat(height);
  Rat b = d > 1 ? rng.rat(height) : Rat(0);
  if (force_irrational && d > 1 && is_zero(b)) b = Rat(1, 2);
  return d > 1 ? QuadRat(a, b, d) : QuadRat(a);
}

struct FramedState {
  std::array<KVec, 3> frame;  // common norm
  KVec n;                     // spanning vector of the negative complement
};

/// One-vector frame step: reflect (n, frame[r]) inside their plane with the
/// mirror frame[r] + t n; keeps the other two frame vectors pointwise.
bool frame_step(const PeriodSpace& ps, FramedState& st, int r, const QuadRat& t) {
  KVec mirror(ps.b);
  for (int k = 0; k < ps.b; ++k) mirror[k] = st.frame[r][k] + t * st.n[k];
  if (is_zero(q_eval(ps, mirror, mirror))) return false;
  st.frame[r] = apply_reflection(ps.gram, mirror, st.frame[r]);
  st.n = apply_reflection(ps.gram, mirror, st.n);
  return true;
}



}  // namespace

TwistorPlane sample_plane(const PeriodSpace& ps, std::uint64_t seed) {
  SplitMix64 rng(seed);
  // greedy positive orthogonal base from the standard basis, square-equalized
  std::vector<KVec> base;
  auto try_vec = [&](KVec cand) {
    for (const KVec& prev : base) {
      QuadRat c = q_eval(ps, cand, prev) / q_eval(ps, prev, prev);
      for (int k = 0; k < ps.b; ++k) cand[k] -= c * prev[k];
    }
    if (sign_of(q_eval(ps, cand, cand)) <= 0) return false;
    base.push_back(cand);
    return true;
  };
  for (int k = 0; k < ps.b && base.size() < 3; ++k) {
    KVec e(ps.b);
    e[k] = QuadRat(1);
    try_vec(e);
  }
  if (base.size() < 3) throw Error("SearchExhausted", "no positive base plane found");
  QuadRat s0 = q_eval(ps, base[0], base[0]);
  for (int i = 1; i < 3; ++i) {
    auto t = quad_sqrt(s0 / q_eval(ps, base[i], base[i]), ps.d);
    if (!t) throw Error("SearchExhausted", "base norms not square-equalizable");
    for (int k = 0; k < ps.b; ++k) base[i][k] = *t * base[i][k];
  }
  TwistorPlane w = plane_from_frame(ps, {base[0], base[1], base[2]});
  if (seed == 0) return w;
  // seeded rational Cayley image
  QMat q = ps.gram;
  for (int tries = 0; tries < 64; ++tries) {
    QMat k(ps.b, ps.b);
    for (int i = 0; i < ps.b; ++i)
      for (int j = i + 1; j < ps.b; ++j) {
        k(i, j) = rng.rat(3);
        k(j, i) = -k(i, j);
      }
    QMat s = *inverse(q) * k;
    if (!inverse(QMat(QMat::identity(ps.b) + s))) continue;
    QMat r = cayley_orthogonal(q, s);
    KMat rk = lift(r);
    std::array<KVec, 3> frame;
    for (int i = 0; i < 3; ++i) frame[i] = rk * w.frame[i];
    return plane_from_frame(ps, frame);
  }
  throw Error("SearchExhausted", "could not sample an orthogonal transform");
}

TwistorPlane sample_plane_in_perp(const IntegralLattice& lat, const PeriodSpace& ps,
                                  const NSLattice& q_sub, std::uint64_t seed) {
  // rational complement of the sublattice
  QMat qrows(q_sub.rank(), ps.b);
  for (int i = 0; i < q_sub.rank(); ++i)
    for (int j = 0; j < ps.b; ++j) qrows(i, j) = Rat(q_sub.basis[i][j]);
  Subspace<Rat> perp = q_sub.rank() ? orth_complement(ps.gram, Subspace<Rat>::span(qrows))
                                    : Subspace<Rat>::full(ps.b);
  (void)lat;
  // base frame inside the complement
  std::vector<KVec> base;
  auto try_vec = [&](KVec cand) {
    for (const KVec& prev : base) {
      QuadRat c = q_eval(ps, cand, prev) / q_eval(ps, prev, prev);
      for (int k = 0; k < ps.b; ++k) cand[k] -= c * prev[k];
    }
    if (sign_of(q_eval(ps, cand, cand)) <= 0) return false;
    base.push_back(cand);
    return true;
  };
  for (int i = 0; i < perp.dim() && base.size() < 3; ++i) try_vec(to_kvec(perp.basis().row(i)));
  if (base.size() < 3) throw Error("SearchExhausted", "complement has no positive 3-plane");
  QuadRat s0 = q_eval(ps, base[0], base[0]);
  for (int i = 1; i < 3; ++i) {
    auto t = quad_sqrt(s0 / q_eval(ps, base[i], base[i]), ps.d);
    if (!t) throw Error("SearchExhausted", "base norms not square-equalizable");
    for (int k = 0; k < ps.b; ++k) base[i][k] = *t * base[i][k];
  }
  // complement line of the base frame inside the rational complement
  FramedState st{{base[0], base[1], base[2]}, {}};
  {
    KMat pb = lift(perp.basis());
    KMat cond(3, perp.dim());
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < perp.dim(); ++c) cond(i, c) = q_eval(ps, st.frame[i], pb.row(c));
    KMat ker = kernel(cond);
    if (ker.rows() != 1) throw Error("InternalError", "perp complement is not a line");
    KVec n(ps.b);
    for (int c = 0; c < perp.dim(); ++c)
      for (int k = 0; k < ps.b; ++k) n[k] += ker(0, c) * pb(c, k);
    st.n = n;
  }
  SplitMix64 rng(seed);
  // one irrational step per frame index so no rational vector survives,
  // then a couple of extra seeded steps
  for (int r = 0; r < 3;) {
    QuadRat t = seeded_scalar(rng, 3, ps.d, /*force_irrational=*/true);
    if (frame_step(ps, st, r, t)) ++r;
  }
  int extra = static_cast<int>(rng.below(2));
  for (int s = 0; s < extra;) {
    int r = static_cast<int>(rng.below(3));
    QuadRat t = seeded_scalar(rng, 3, ps.d, true);
    if (frame_step(ps, st, r, t)) ++s;
  }
  return plane_from_frame(ps, st.frame);
}

std::pair<PeriodPoint, PeriodPoint> sample_admissible_pair(const IntegralLattice& lat,
                                                           const PeriodSpace& ps,
                                                           const NSLattice& q_sub,
                                                           std::uint64_t seed) {
  static const std::vector<RatDir> dirs = {
      {Rat(3, 5), Rat(4, 5), Rat(0)},
      {Rat(5, 13), Rat(12, 13), Rat(0)},
      {Rat(3, 5), Rat(0), Rat(4, 5)},
      {Rat(8, 17), Rat(15, 17), Rat(0)},
  };
  for (int retry = 0; retry < 40; ++retry) {
    std::uint64_t s = seed + 7919ULL * retry;
    try {
      TwistorPlane wa = sample_plane_in_perp(lat, ps, q_sub, s);
      PeriodPoint i0 = period_of_induced(ps, wa, {Rat(1), Rat(0), Rat(0)});
      if (!ns_equal(neron_severi(lat, ps, i0), q_sub)) continue;

      // pencil mate: replace the first frame vector, keeping the pair of i0
      SplitMix64 rng(s ^ 0x9e3779b9ULL);
      FramedState st{wa.frame, {}};
      {
        KMat rows(3, ps.b);
        for (int i = 0; i < 3; ++i) rows.set_row(i, wa.frame[i]);
        KSub spn = KSub::span(rows);
        // complement inside the rational orthogonal complement of the lattice
        QMat qrows(q_sub.rank(), ps.b);
        for (int i = 0; i < q_sub.rank(); ++i)
          for (int j = 0; j < ps.b; ++j) qrows(i, j) = Rat(q_sub.basis[i][j]);
        Subspace<Rat> perp = q_sub.rank()
                                 ? orth_complement(ps.gram, Subspace<Rat>::span(qrows))
                                 : Subspace<Rat>::full(ps.b);
        KMat pb = lift(perp.basis());
        KMat cond(3, perp.dim());
        for (int i = 0; i < 3; ++i)
          for (int c = 0; c < perp.dim(); ++c) cond(i, c) = q_eval(ps, st.frame[i], pb.row(c));
        KMat ker = kernel(cond);
        if (ker.rows() != 1) continue;
        KVec n(ps.b);
        for (int c = 0; c < perp.dim(); ++c)
          for (int k = 0; k < ps.b; ++k) n[k] += ker(0, c) * pb(c, k);
        st.n = n;
        (void)spn;
      }
      int steps = 1 + static_cast<int>(rng.below(2));
      for (int done = 0; done < steps;) {
        QuadRat t = seeded_scalar(rng, 3, ps.d, true);
        if (frame_step(ps, st, 0, t)) ++done;
      }
      TwistorPlane wb = plane_from_frame(ps, st.frame);
      PeriodPoint i1 = period_of_induced(ps, wb, dirs[rng.below(dirs.size())]);
      if (!ns_equal(neron_severi(lat, ps, i1), q_sub)) continue;
      // distinct period lines
      KMat lines(4, ps.b);
      lines.set_row(0, i0.u);
      lines.set_row(1, i0.v);
      lines.set_row(2, i1.u);
      lines.set_row(3, i1.v);
      if (KSub::span(lines).dim() < 3) continue;
      return {i0, i1};
    } catch (const Error&) {
      continue;
    }
  }
  throw Error("SearchExhausted", "could not sample an admissible instance pair");
}

TwistorPath connect_admissible(const IntegralLattice& lat, const PeriodSpace& ps,
                               const NSLattice& q_sub, const PeriodPoint& i0,
                               const PeriodPoint& i1, const WalkConfig& cfg) {
  if (ps.d <= 1)
    throw Error("SearchExhausted",
                "rational-only scalars: rational vertices are never of general type "
                "(their Neron-Severi rank exceeds the target)");
  NSLattice ns0 = neron_severi(lat, ps, i0);
  NSLattice ns1 = neron_severi(lat, ps, i1);
  if (!ns_equal(ns0, q_sub) || !ns_equal(ns1, q_sub))
    throw Error("PreconditionNS", "period Neron-Severi lattices differ from the target");

  // rational orthogonal complement of the sublattice
  QMat qrows(q_sub.rank(), ps.b);
  for (int i = 0; i < q_sub.rank(); ++i)
    for (int j = 0; j < ps.b; ++j) qrows(i, j) = Rat(q_sub.basis[i][j]);
  Subspace<Rat> perp_q = q_sub.rank() ? orth_complement(ps.gram, Subspace<Rat>::span(qrows))
                                      : Subspace<Rat>::full(ps.b);
  if (perp_q.dim() != 4)
    throw Error("SearchExhausted",
                "walk supports a 4-dimensional orthogonal complement; got dim " +
                    std::to_string(perp_q.dim()));
  KSub perp_k = KSub::span(lift(perp_q.basis()));
  for (const KVec* v : {&i0.u, &i0.v, &i1.u, &i1.v})
    if (!perp_k.contains(*v))
      throw Error("PreconditionNS", "period does not lie inside the complement of the lattice");

  QuadRat s = q_eval(ps, i0.u, i0.u);
  QuadRat s1 = q_eval(ps, i1.u, i1.u);

  // Third frame vector for an endpoint plane: the 2-plane orthogonal to the
  // pair inside the complement has signature (1,1); when its discriminant is
  // minus a square the form is hyperbolic up to scale, and the norm equation
  // q(h) = s has the exact solution x - y, x + y with x = (w+1)/2, y = (w-1)/2.
  auto find_third = [&](const PeriodPoint& pp, const QuadRat& target) -> std::optional<KVec> {
    KMat cond(2 + q_sub.rank(), ps.b);
    int rowi = 0;
    for (const KVec* v : {&pp.u, &pp.v}) {
      for (int k = 0; k < ps.b; ++k) {
        QuadRat acc;
        for (int j = 0; j < ps.b; ++j) acc += QuadRat(ps.gram(k, j)) * (*v)[j];
        cond(rowi, k) = acc;
      }
      ++rowi;
    }
    for (int i = 0; i < q_sub.rank(); ++i) {
      for (int k = 0; k < ps.b; ++k) {
        QuadRat acc;
        for (int j = 0; j < ps.b; ++j)
          acc += QuadRat(ps.gram(k, j)) * QuadRat(Rat(q_sub.basis[i][j]));
        cond(rowi, k) = acc;
      }
      ++rowi;
    }
    KMat ker = kernel(cond);  // 2-dim inside the complement
    if (ker.rows() < 2) return std::nullopt;
    KVec p1 = ker.row(0), p2 = ker.row(1);
    QuadRat c = q_eval(ps, p2, p1) / q_eval(ps, p1, p1);
    for (int k = 0; k < ps.b; ++k) p2[k] -= c * p1[k];
    QuadRat alpha = q_eval(ps, p1, p1), gamma = q_eval(ps, p2, p2);
    if (sign_of(alpha) < 0) {
      std::swap(p1, p2);
      std::swap(alpha, gamma);
    }
    if (sign_of(alpha) <= 0 || sign_of(gamma) >= 0) return std::nullopt;
    auto t = quad_sqrt(-gamma / alpha, ps.d);
    if (!t) return std::nullopt;
    // basis (p1, p2/t) has norms (alpha, -alpha)
    QuadRat w = target / alpha;
    QuadRat x = (w + QuadRat(1)) / QuadRat(2), yy = (w - QuadRat(1)) / QuadRat(2);
    KVec h(ps.b);
    for (int k = 0; k < ps.b; ++k) h[k] = x * p1[k] + yy / *t * p2[k];
    if (!(q_eval(ps, h, h) == target)) return std::nullopt;
    return h;
  };

  auto h0 = find_third(i0, s);
  auto h1 = find_third(i1, s1);
  if (!h0 || !h1)
    throw Error("SearchExhausted", "no norm-compatible completion of an endpoint plane");

  std::array<KVec, 3> f_start{i0.u, i0.v, *h0};
  std::array<KVec, 3> f_end{i1.u, i1.v, *h1};
  TwistorPlane w_start = plane_from_frame(ps, f_start);
  TwistorPlane w_end = plane_from_frame(ps, f_end);

  auto finalize = [&](TwistorPath path) -> std::optional<TwistorPath> {
    path.endpoint_start = i0;
    path.endpoint_end = i1;
    if (!validate_path(ps, path).ok) return std::nullopt;
    for (const auto& v : path.vertices)
      if (!v) return std::nullopt;
    try {
      if (!is_admissible(lat, ps, path).ok) return std::nullopt;
    } catch (const Error&) {
      return std::nullopt;
    }
    return path;
  };

  if (w_start.space == w_end.space) {
    TwistorPath p;
    p.edges = {w_start};
    if (auto done = finalize(p)) return *done;
  }

  // the complement is 4-dimensional, so the endpoint planes always share a
  // 2-plane; when it happens to carry a vertex, two edges suffice
  {
    TwistorPath p;
    p.edges = {w_start, w_end};
    p.vertices.push_back(vertex_between(ps, w_start, w_end));
    if (p.vertices[0])
      if (auto done = finalize(p)) return *done;
  }

  // Primary construction: when the period pair-planes intersect, their sum
  // is a 3-plane through both periods. Its discriminant class then matches
  // the frame norms, so a common-norm frame exists exactly, and the two
  // periods themselves serve as the vertices.
  KMat zrows(2, ps.b), zrows2(2, ps.b);
  zrows.set_row(0, i0.u);
  zrows.set_row(1, i0.v);
  zrows2.set_row(0, i1.u);
  zrows2.set_row(1, i1.v);
  KSub zplane = KSub::span(zrows);
  KSub zplane2 = KSub::span(zrows2);
  if (zplane.intersect(zplane2).dim() >= 1) {
    KMat all(4, ps.b);
    all.set_row(0, i0.u);
    all.set_row(1, i0.v);
    all.set_row(2, i1.u);
    all.set_row(3, i1.v);
    KSub vspace = KSub::span(all);
    if (vspace.dim() == 3) {
      // complement of the first pair inside the sum
      KVec e = vspace.contains(i1.u) && !zplane.contains(i1.u) ? i1.u : i1.v;
      for (const KVec* zz : {&i0.u, &i0.v}) {
        QuadRat c = q_eval(ps, e, *zz) / q_eval(ps, *zz, *zz);
        for (int k = 0; k < ps.b; ++k) e[k] -= c * (*zz)[k];
      }
      QuadRat eps = q_eval(ps, e, e);
      if (sign_of(eps) > 0) {
        if (auto tau = quad_sqrt(s / eps, ps.d)) {
          std::array<KVec, 3> vframe{i0.u, i0.v, e};
          for (int k = 0; k < ps.b; ++k) vframe[2][k] = *tau * vframe[2][k];
          try {
            TwistorPlane vmid = plane_from_frame(ps, vframe);
            TwistorPath p;
            p.edges.push_back(w_start);
            if (!(vmid.space == w_start.space)) {
              p.vertices.push_back(vertex_from_pair(ps, i0.u, i0.v));
              p.edges.push_back(vmid);
            }
            if (!(p.edges.back().space == w_end.space)) {
              p.vertices.push_back(vertex_from_pair(ps, i1.u, i1.v));
              p.edges.push_back(w_end);
            }
            if (auto done = finalize(std::move(p))) return *done;
          } catch (const Error&) {
          }
        }
      }
    }
  }

  // Bounded fallback for instances outside the pencil configuration: walk
  // one-vector frame steps from the start plane (kept pairs provide the
  // vertices) and test whether the target pair-plane fits into a step.
  SplitMix64 wrng(cfg.seed ^ 0xabcdef12ULL);
  auto complement_of = [&](const TwistorPlane& pl) {
    KMat pb = lift(perp_q.basis());
    KMat cond(3, perp_q.dim());
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < perp_q.dim(); ++c) cond(i, c) = q_eval(ps, pl.frame[i], pb.row(c));
    KMat ker = kernel(cond);
    if (ker.rows() != 1) throw Error("InternalError", "complement line not found");
    KVec n(ps.b);
    for (int c = 0; c < perp_q.dim(); ++c)
      for (int k = 0; k < ps.b; ++k) n[k] += ker(0, c) * pb(c, k);
    return n;
  };
  // try to finish from `pl` in one step: some kept pair plus a replacement
  // direction that absorbs both target vectors
  auto goal_step = [&](const TwistorPlane& pl, TwistorPath prefix) -> std::optional<TwistorPath> {
    if (pl.space.contains(i1.u) && pl.space.contains(i1.v)) {
      prefix.endpoint_start = i0;
      if (auto done = finalize(prefix)) return *done;
      return std::nullopt;
    }
    KVec n = complement_of(pl);
    for (int rep = 0; rep < 3; ++rep) {
      int k1 = (rep + 1) % 3, k2 = (rep + 2) % 3;
      // project the target pair onto span(frame[rep], n)
      auto project = [&](const KVec& x) {
        KVec out = x;
        for (int kk : {k1, k2}) {
          QuadRat c = q_eval(ps, out, pl.frame[kk]) / q_eval(ps, pl.frame[kk], pl.frame[kk]);
          for (int k = 0; k < ps.b; ++k) out[k] -= c * pl.frame[kk][k];
        }
        return out;
      };
      KVec du = project(i1.u), dv = project(i1.v);
      KVec dir = vec_is_zero(du) ? dv : du;
      if (vec_is_zero(dir)) continue;  // both in the kept pair: handled above
      if (!vec_is_zero(du) && !vec_is_zero(dv)) {
        // must be parallel for one replacement to absorb both
        KMat two(2, ps.b);
        two.set_row(0, du);
        two.set_row(1, dv);
        if (KSub::span(two).dim() != 1) continue;
      }
      QuadRat nd = q_eval(ps, dir, dir);
      if (sign_of(nd) <= 0) continue;
      auto tau = quad_sqrt(q_eval(ps, pl.frame[k1], pl.frame[k1]) / nd, ps.d);
      if (!tau) continue;
      std::array<KVec, 3> nf{pl.frame[k1], pl.frame[k2], dir};
      for (int k = 0; k < ps.b; ++k) nf[2][k] = *tau * nf[2][k];
      try {
        TwistorPlane last = plane_from_frame(ps, nf);
        TwistorPath p = prefix;
        p.vertices.push_back(vertex_from_pair(ps, pl.frame[k1], pl.frame[k2]));
        p.edges.push_back(last);
        if (auto done = finalize(std::move(p))) return *done;
      } catch (const Error&) {
      }
    }
    return std::nullopt;
  };
  TwistorPath root;
  root.edges = {w_start};
  if (auto done = goal_step(w_start, root)) return *done;
  for (int attempt = 0; attempt < cfg.max_tries; ++attempt) {
    // one seeded step away from the start, then try to finish
    FramedState st{f_start, complement_of(w_start)};
    int r = static_cast<int>(wrng.below(3));
    QuadRat t = seeded_scalar(wrng, cfg.max_height / 4 + 1, ps.d, attempt % 2 == 0);
    FramedState prev = st;
    if (!frame_step(ps, st, r, t)) continue;
    TwistorPath p;
    p.edges = {w_start};
    p.vertices.push_back(vertex_from_pair(ps, prev.frame[(r + 1) % 3], prev.frame[(r + 2) % 3]));
    TwistorPlane mid = plane_from_frame(ps, st.frame);
    p.edges.push_back(mid);
    if (auto done = goal_step(mid, p)) return *done;
  }
  throw Error("SearchExhausted",
              "no admissible path found within " + std::to_string(cfg.max_tries) +
                  " attempts at height " + std::to_string(cfg.max_height));
}

//------------------------------------------------------------------------------
// path files
//------------------------------------------------------------------------------

namespace {

json kvec_json(const KVec& v) {
  json arr = json::array();
  for (const QuadRat& x : v) arr.push_back(to_string(x));
  return arr;
}

KVec kvec_from(const json& arr, int d) {
  KVec v;
  for (const auto& s : arr) v.push_back(parse_quadrat(s.get<std::string>(), d));
  return v;
}

}  // namespace

std::string save_path(const PeriodSpace& ps, const TwistorPath& path) {
  json out;
  json gram = json::array();
  for (int i = 0; i < ps.b; ++i) {
    json row = json::array();
    for (int j = 0; j < ps.b; ++j) row.push_back(to_string(ps.gram(i, j)));
    gram.push_back(std::move(row));
  }
  out["space"] = {{"gram", std::move(gram)}, {"d", ps.d}};
  json edges = json::array();
  for (const TwistorPlane& w : path.edges)
    edges.push_back(json::array({kvec_json(w.frame[0]), kvec_json(w.frame[1]), kvec_json(w.frame[2])}));
  out["edges"] = std::move(edges);
  json vertices = json::array();
  for (const auto& v : path.vertices) {
    if (v)
      vertices.push_back({{"u", kvec_json(v->u)}, {"v", kvec_json(v->v)}});
    else
      vertices.push_back(nullptr);
  }
  out["vertices"] = std::move(vertices);
  json endpoints = json::object();
  if (path.endpoint_start)
    endpoints["start"] = {{"u", kvec_json(path.endpoint_start->u)},
                          {"v", kvec_json(path.endpoint_start->v)}};
  if (path.endpoint_end)
    endpoints["end"] = {{"u", kvec_json(path.endpoint_end->u)},
                        {"v", kvec_json(path.endpoint_end->v)}};
  out["endpoints"] = std::move(endpoints);
  return out.dump(2) + "\n";
}

TwistorPath load_path(const std::string& text, PeriodSpace* ps_out) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error("SchemaError", std::string("bad JSON: ") + e.what());
  }
  if (!in.contains("space") || !in.contains("edges"))
    throw Error("SchemaError", "path file needs space and edges");
  const auto& rows = in["space"]["gram"];
  QMat gram(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
  for (int i = 0; i < gram.rows(); ++i)
    for (int j = 0; j < gram.cols(); ++j) gram(i, j) = parse_rat(rows[i][j].get<std::string>());
  PeriodSpace ps = make_period_space(gram, in["space"].value("d", 0));
  if (ps_out) *ps_out = ps;
  TwistorPath path;
  for (const auto& e : in["edges"]) {
    if (!e.is_array() || e.size() != 3) throw Error("SchemaError", "edge needs three frame vectors");
    path.edges.push_back(
        plane_make(ps, kvec_from(e[0], ps.d), kvec_from(e[1], ps.d), kvec_from(e[2], ps.d)));
  }
  if (in.contains("vertices"))
    for (const auto& v : in["vertices"]) {
      if (v.is_null())
        path.vertices.push_back(std::nullopt);
      else
        path.vertices.push_back(
            make_period_point(ps, kvec_from(v["u"], ps.d), kvec_from(v["v"], ps.d)));
    }
  if (in.contains("endpoints")) {
    const auto& ep = in["endpoints"];
    if (ep.contains("start"))
      path.endpoint_start =
          make_period_point(ps, kvec_from(ep["start"]["u"], ps.d), kvec_from(ep["start"]["v"], ps.d));
    if (ep.contains("end"))
      path.endpoint_end =
          make_period_point(ps, kvec_from(ep["end"]["u"], ps.d), kvec_from(ep["end"]["v"], ps.d));
  }
  return path;
}

NSLattice span_lattice(int ambient, const std::vector<std::vector<long>>& gens) {
  if (gens.empty()) return {ambient, {}};
  // saturate: the integral kernel of the conditions cutting out the span
  QMat rows(static_cast<int>(gens.size()), ambient);
  for (size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < ambient; ++j) rows(static_cast<int>(i), j) = gens[i][j];
  QMat cond = kernel(rows);  // rational conditions
  ZRows zrows;
  for (int i = 0; i < cond.rows(); ++i) {
    mpz_class lcm = 1;
    for (int j = 0; j < ambient; ++j) {
      mpz_class den = cond(i, j).get_den(), g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      lcm = lcm / g * den;
    }
    ZVec row(ambient);
    for (int j = 0; j < ambient; ++j) row[j] = Rat(cond(i, j) * Rat(lcm)).get_num();
    zrows.push_back(std::move(row));
  }
  return lattice_from_kernel(ambient, zrows);
}

}  // namespace hk
