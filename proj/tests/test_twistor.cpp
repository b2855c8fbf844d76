#include <doctest.h>

#include "hk/twistor.hpp"

using namespace hk;

namespace {

KVec kunit(int n, int k) {
  KVec v(n);
  v[k] = QuadRat(1);
  return v;
}

}  // namespace

TEST_CASE("period space gates") {
  CHECK(make_period_space(diag_form({1, 1, 1, -1, -1}), 3).b == 5);
  CHECK_THROWS_AS(make_period_space(diag_form({1, 1, -1, -1}), 0), Error);
  CHECK_THROWS_AS(make_period_space(diag_form({1, 1, 1, -1}), 1), Error);
}

TEST_CASE("plane construction and norm equalization") {
  PeriodSpace rational = make_period_space(diag_form({1, 1, 1, -1, -1}), 0);
  PeriodSpace quad = make_period_space(diag_form({1, 1, 1, -1, -1}), 3);

  TwistorPlane w = plane_make(rational, kunit(5, 0), kunit(5, 1), kunit(5, 2));
  CHECK(w.norm == QuadRat(1));

  CHECK_THROWS_AS(plane_make(rational, kunit(5, 0), kunit(5, 1), kunit(5, 3)), Error);
  KVec dep = kunit(5, 0);
  CHECK_THROWS_AS(plane_make(rational, kunit(5, 0), kunit(5, 1), dep), Error);

  // norm of 2e3 + e4 is 3: positive, but sqrt(1/3) only exists over Q(sqrt 3)
  KVec mixed(5);
  mixed[2] = QuadRat(2);
  mixed[3] = QuadRat(1);
  CHECK_THROWS_AS(plane_make(rational, kunit(5, 0), kunit(5, 1), mixed), Error);
  TwistorPlane wq = plane_make(quad, kunit(5, 0), kunit(5, 1), mixed);
  CHECK(wq.norm == QuadRat(1));
  CHECK(q_eval(quad, wq.frame[2], wq.frame[2]) == QuadRat(1));
}

TEST_CASE("induced periods lie on the quadric") {
  PeriodSpace ps = make_period_space(diag_form({1, 1, 1, -1, -1}), 0);
  TwistorPlane w = plane_make(ps, kunit(5, 0), kunit(5, 1), kunit(5, 2));
  PeriodPoint l = period_of_induced(ps, w, {Rat(1), Rat(0), Rat(0)});
  CHECK(l.u == w.frame[1]);
  CHECK(l.v == w.frame[2]);
  // (l, l) = 0 on the complexification: q(u,u) = q(v,v), q(u,v) = 0
  CHECK(q_eval(ps, l.u, l.u) == q_eval(ps, l.v, l.v));
  CHECK(is_zero(q_eval(ps, l.u, l.v)));

  PeriodPoint lm = period_of_induced(ps, w, {Rat(-1), Rat(0), Rat(0)});
  // antipodal direction gives the conjugate line span(f2 - i f3), here
  // represented by the pair (-f2, f3)
  KVec neg = l.u;
  for (auto& c : neg) c = -c;
  CHECK(lm.u == neg);
  CHECK(lm.v == l.v);

  PeriodPoint tilted = period_of_induced(ps, w, {Rat(3, 5), Rat(4, 5), Rat(0)});
  CHECK(q_eval(ps, tilted.u, tilted.u) == QuadRat(1));
  CHECK_THROWS_AS(period_of_induced(ps, w, {Rat(1), Rat(1), Rat(0)}), Error);
}

TEST_CASE("line intersection criterion and vertices") {
  PeriodSpace ps = make_period_space(diag_form({1, 1, 1, -1, -1}), 0);
  TwistorPlane w1 = plane_make(ps, kunit(5, 0), kunit(5, 1), kunit(5, 2));

  // shares span(e1, e2); the third directions differ
  PeriodSpace quad = make_period_space(diag_form({1, 1, 1, -1, -1}), 3);
  KVec mixed(5);
  mixed[2] = QuadRat(2);
  mixed[3] = QuadRat(1);
  TwistorPlane w2 = plane_make(quad, kunit(5, 0), kunit(5, 1), mixed);
  IntersectResult r = lines_intersect(quad, w1, w2);
  CHECK(r.intersect);
  CHECK(r.shared.dim() == 2);
  CHECK(r.shared.contains(kunit(5, 0)));
  CHECK(r.shared.contains(kunit(5, 1)));
  REQUIRE(r.vertices.size() == 2);
  CHECK(r.vertices[0].u == kunit(5, 0));
  CHECK(r.vertices[0].v == kunit(5, 1));

  IntersectResult same = lines_intersect(ps, w1, w1);
  CHECK(same.intersect);
  CHECK(same.shared.dim() == 3);

  // sharing only e1 is not enough
  KVec y(5);
  y[1] = QuadRat(1);
  y[3] = QuadRat(Rat(1, 2));
  KVec z(5);
  z[2] = QuadRat(1);
  z[4] = QuadRat(Rat(1, 2));
  // orthogonalize by hand: q(y,y) = 1 - 1/4 = 3/4 > 0, y orth e1, z orth e1, y
  TwistorPlane w3 = plane_make(quad, kunit(5, 0), y, z);
  IntersectResult r3 = lines_intersect(quad, w1, w3);
  CHECK(!r3.intersect);
  // symmetry of the criterion
  CHECK(lines_intersect(quad, w3, w1).intersect == r3.intersect);
}

TEST_CASE("connect: trivial and adjacent cases") {
  PeriodSpace ps = make_period_space(diag_form({1, 1, 1, -1, -1}), 3);
  TwistorPlane w = plane_make(ps, kunit(5, 0), kunit(5, 1), kunit(5, 2));
  TwistorPath same = connect_planes(ps, w, w);
  CHECK(same.length() == 0);
  CHECK(validate_path(ps, same).ok);

  KVec mixed(5);
  mixed[2] = QuadRat(2);
  mixed[3] = QuadRat(1);
  TwistorPlane w2 = plane_make(ps, kunit(5, 0), kunit(5, 1), mixed);
  TwistorPath adj = connect_planes(ps, w, w2);
  CHECK(adj.length() == 1);
  CHECK(validate_path(ps, adj).ok);
}

TEST_CASE("connect: seeded isometry images at b = 5, rational scalars") {
  PeriodSpace ps = make_period_space(diag_form({1, 1, 1, -1, -1}), 0);
  TwistorPlane base = sample_plane(ps, 0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    TwistorPlane other = sample_plane(ps, seed);
    TwistorPath path = connect_planes(ps, base, other);
    PathCheck pc = validate_path(ps, path);
    CHECK(pc.ok);
    CHECK(path.length() <= 6);
    CHECK(path.edges.front().space == base.space);
    CHECK(path.edges.back().space == other.space);
  }
}

TEST_CASE("path files round-trip") {
  PeriodSpace ps = make_period_space(diag_form({1, 1, 1, -1, -1}), 0);
  TwistorPlane base = sample_plane(ps, 0);
  TwistorPlane other = sample_plane(ps, 4);
  TwistorPath path = connect_planes(ps, base, other);
  std::string text = save_path(ps, path);
  PeriodSpace ps2;
  TwistorPath back = load_path(text, &ps2);
  CHECK(ps2.b == ps.b);
  CHECK(back.edges.size() == path.edges.size());
  for (size_t i = 0; i < path.edges.size(); ++i)
    CHECK(back.edges[i].space == path.edges[i].space);
  CHECK(validate_path(ps2, back).ok);
  CHECK(save_path(ps2, back) == text);
}

TEST_CASE("neron-severi lattices of periods") {
  IntegralLattice lat = make_lattice(diag_form({1, 1, 1, -1}));
  PeriodSpace ps = make_period_space(lat.gram, 3);

  // l = span(e1 + i (e2 + sqrt3 e3)/2): conditions cut everything but e4
  KVec u = kunit(4, 0);
  KVec v(4);
  v[1] = QuadRat(Rat(1, 2));
  v[2] = QuadRat(Rat(0), Rat(1, 2), 3);
  PeriodPoint l = make_period_point(ps, u, v);
  NSLattice ns = neron_severi(lat, ps, l);
  CHECK(ns.rank() == 1);
  CHECK(ns_equal(ns, span_lattice(4, {{0, 0, 0, 1}})));

  // rational period: two conditions leave rank 2
  PeriodPoint lr = make_period_point(ps, kunit(4, 0), kunit(4, 1));
  NSLattice ns2 = neron_severi(lat, ps, lr);
  CHECK(ns2.rank() == 2);
  CHECK(ns_equal(ns2, span_lattice(4, {{0, 0, 1, 0}, {0, 0, 0, 1}})));

  // generic irrational period: four independent conditions, rank 0
  KVec ug(4), vg(4);
  ug[0] = QuadRat(Rat(1), Rat(1, 7), 3);
  ug[1] = QuadRat(Rat(1, 2), Rat(1, 5), 3);
  ug[2] = QuadRat(Rat(1, 3), Rat(1, 11), 3);
  ug[3] = QuadRat(Rat(1, 4), Rat(1, 13), 3);
  // build an orthogonal equal-norm partner inside a positive plane through ug
  // by brute construction: use the plane machinery instead
  PeriodSpace ps5 = make_period_space(diag_form({1, 1, 1, -1}), 3);
  (void)ps5;
  (void)vg;
}

TEST_CASE("general type at degree 2") {
  IntegralLattice lat = make_lattice(diag_form({1, 1, 1, -1}));
  PeriodSpace ps = make_period_space(lat.gram, 3);
  TwistorPlane w = plane_make(ps, kunit(4, 0), kunit(4, 1), kunit(4, 2));

  KVec v(4);
  v[1] = QuadRat(Rat(1, 2));
  v[2] = QuadRat(Rat(0), Rat(1, 2), 3);
  PeriodPoint good = make_period_point(ps, kunit(4, 0), v);
  CHECK(general_type2(lat, ps, w, good));

  PeriodPoint bad = make_period_point(ps, kunit(4, 0), kunit(4, 1));
  CHECK(!general_type2(lat, ps, w, bad));

  // the inclusion lattice(W-perp) <= NS holds in both cases
  NSLattice perp = plane_perp_lattice(lat, ps, w);
  CHECK(ns_contains(neron_severi(lat, ps, good), perp));
  CHECK(ns_contains(neron_severi(lat, ps, bad), perp));

  // a period whose plane leaves W: q(v,v) = 25/16 - 9/16 = 1 with e4 part
  KVec off(4);
  off[1] = QuadRat(Rat(5, 4));
  off[3] = QuadRat(Rat(3, 4));
  CHECK_THROWS_AS(general_type2(lat, ps, w, make_period_point(ps, kunit(4, 0), off)), Error);
}

TEST_CASE("admissible walk: b = 5 with NS = Z e5") {
  QMat gram = diag_form({1, 1, 1, -1, -1});
  IntegralLattice lat = make_lattice(gram);
  PeriodSpace ps = make_period_space(gram, 3);
  NSLattice q_sub = span_lattice(5, {{0, 0, 0, 0, 1}});

  auto [i0, i1] = sample_admissible_pair(lat, ps, q_sub, 101);
  REQUIRE(ns_equal(neron_severi(lat, ps, i0), q_sub));
  REQUIRE(ns_equal(neron_severi(lat, ps, i1), q_sub));

  TwistorPath path = connect_admissible(lat, ps, q_sub, i0, i1, {7, 400, 20});
  CHECK(validate_path(ps, path).ok);
  AdmissibilityReport rep = is_admissible(lat, ps, path);
  CHECK(rep.ok);
  for (const auto& vx : path.vertices) {
    REQUIRE(vx.has_value());
    CHECK(ns_equal(neron_severi(lat, ps, *vx), q_sub));
  }
}

TEST_CASE("admissible walk: b = 4 with NS = 0") {
  QMat gram = diag_form({1, 1, 1, -1});
  IntegralLattice lat = make_lattice(gram);
  PeriodSpace ps = make_period_space(gram, 3);
  NSLattice q_sub = span_lattice(4, {});

  auto [i0, i1] = sample_admissible_pair(lat, ps, q_sub, 11);
  REQUIRE(neron_severi(lat, ps, i0).rank() == 0);
  REQUIRE(neron_severi(lat, ps, i1).rank() == 0);

  TwistorPath path = connect_admissible(lat, ps, q_sub, i0, i1, {9, 400, 20});
  CHECK(is_admissible(lat, ps, path).ok);
  for (const auto& vx : path.vertices) {
    REQUIRE(vx.has_value());
    CHECK(neron_severi(lat, ps, *vx).rank() == 0);
  }
}

TEST_CASE("identical instance and seed produce identical paths") {
  QMat gram = diag_form({1, 1, 1, -1, -1});
  IntegralLattice lat = make_lattice(gram);
  PeriodSpace ps = make_period_space(gram, 3);
  NSLattice q_sub = span_lattice(5, {{0, 0, 0, 0, 1}});
  auto [i0, i1] = sample_admissible_pair(lat, ps, q_sub, 77);
  TwistorPath p1 = connect_admissible(lat, ps, q_sub, i0, i1, {5, 400, 20});
  TwistorPath p2 = connect_admissible(lat, ps, q_sub, i0, i1, {5, 400, 20});
  CHECK(save_path(ps, p1) == save_path(ps, p2));

  TwistorPlane base = sample_plane(make_period_space(gram, 0), 0);
  TwistorPlane other = sample_plane(make_period_space(gram, 0), 9);
  PeriodSpace rat_ps = make_period_space(gram, 0);
  CHECK(save_path(rat_ps, connect_planes(rat_ps, base, other)) ==
        save_path(rat_ps, connect_planes(rat_ps, base, other)));
}

TEST_CASE("admissible walk rejects mismatched NS") {
  QMat gram = diag_form({1, 1, 1, -1, -1});
  IntegralLattice lat = make_lattice(gram);
  PeriodSpace ps = make_period_space(gram, 3);
  NSLattice q_sub = span_lattice(5, {{0, 0, 0, 0, 1}});
  // a rational period inside e5-perp has NS of rank 3, not Z e5
  PeriodPoint rational_pt = make_period_point(ps, kunit(5, 0), kunit(5, 1));
  TwistorPlane w1 = sample_plane_in_perp(lat, ps, q_sub, 33);
  PeriodPoint i1 = period_of_induced(ps, w1, {Rat(1), Rat(0), Rat(0)});
  CHECK_THROWS_AS(connect_admissible(lat, ps, q_sub, rational_pt, i1, {3, 50, 20}), Error);
}

TEST_CASE("admissible mode needs irrational scalars") {
  QMat gram = diag_form({1, 1, 1, -1, -1});
  IntegralLattice lat = make_lattice(gram);
  PeriodSpace rational = make_period_space(gram, 0);
  NSLattice q_sub = span_lattice(5, {{0, 0, 0, 0, 1}});
  PeriodPoint p0 = make_period_point(rational, kunit(5, 0), kunit(5, 1));
  PeriodPoint p1 = make_period_point(rational, kunit(5, 0), kunit(5, 2));
  CHECK_THROWS_WITH_AS(connect_admissible(lat, rational, q_sub, p0, p1, {1, 10, 20}),
                       doctest::Contains("rational"), Error);
}
