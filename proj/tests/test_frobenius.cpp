#include <doctest.h>

#include <algorithm>

#include "hk/apolar.hpp"
#include "hk/lie.hpp"

using namespace hk;

namespace {

QVec unit_vec(int n, int k) {
  QVec v(n);
  v[k] = 1;
  return v;
}

}  // namespace

TEST_CASE("grading operator") {
  GradedAlgebra a = standard_model(4, 1);
  QMat h = grading_operator(a);
  // eta in A_0 has weight i - d = -2
  QVec e0(a.total_dim());
  e0[0] = 1;
  CHECK((h * e0)[0] == Rat(-2));
  // middle degree is weight 0
  CHECK(h(a.offset(2), a.offset(2)) == Rat(0));

  GradedAlgebra b52 = standard_model(5, 2);
  QMat h2 = grading_operator(b52);
  Rat tr(0);
  for (int i = 0; i < b52.total_dim(); ++i) tr += h2(i, i);
  CHECK(tr == Rat(0));
}

TEST_CASE("lefschetz type via the rank criterion") {
  GradedAlgebra a = standard_model(4, 1);
  CHECK(lefschetz_type(a, unit_vec(4, 0)));
  CHECK(lefschetz_type(a, unit_vec(4, 3)));  // negative norm still works
  QVec null_vec = unit_vec(4, 0);
  null_vec[3] = 1;  // q(e1 + e4) = 0
  CHECK(!lefschetz_type(a, null_vec));
  CHECK(!lefschetz_type(a, QVec(4)));
}

TEST_CASE("lefschetz dual solves the triple relations exactly") {
  for (auto [b, m] : std::vector<std::pair<int, int>>{{4, 1}, {4, 2}, {5, 2}}) {
    GradedAlgebra a = standard_model(b, m);
    QMat h = grading_operator(a);
    QVec e1 = unit_vec(b, 0);
    QMat l = mult_operator(a, e1);
    QMat lam = lefschetz_dual(a, e1);
    CHECK(bracket(l, lam) == h);
    CHECK(bracket(h, l) == Rat(2) * l);
    CHECK(bracket(h, lam) == Rat(-2) * lam);
  }
}

TEST_CASE("non-lefschetz elements have no dual") {
  GradedAlgebra a = standard_model(4, 1);
  QVec v = unit_vec(4, 0);
  v[3] = 1;
  CHECK_THROWS_AS(lefschetz_dual(a, v), Error);
}

TEST_CASE("criterion equivalence: rank test vs solvability") {
  GradedAlgebra a = standard_model(5, 1);
  // all basis elements first, then seeded random elements
  for (int k = 0; k < 5; ++k) {
    QVec e(5);
    e[k] = 1;
    bool rank_says = lefschetz_type(a, e);
    bool solvable = true;
    try {
      lefschetz_dual(a, e);
    } catch (const Error&) {
      solvable = false;
    }
    CHECK(rank_says == solvable);
  }
  SplitMix64 rng(29);
  int both = 0;
  for (int trial = 0; trial < 100; ++trial) {
    QVec v(5);
    for (int i = 0; i < 5; ++i) v[i] = rng.rat(3);
    bool rank_says = lefschetz_type(a, v);
    bool solvable = true;
    try {
      lefschetz_dual(a, v);
    } catch (const Error&) {
      solvable = false;
    }
    CHECK(rank_says == solvable);
    if (rank_says) ++both;
  }
  CHECK(both > 50);  // generic elements are of Lefschetz type
}

TEST_CASE("openness surrogate: lefschetz failures wash out along lines") {
  GradedAlgebra a = standard_model(4, 1);
  QVec bad = unit_vec(4, 0);
  bad[3] = 1;  // not of Lefschetz type
  QVec good = unit_vec(4, 1);
  int fails = 0;
  for (int t = 1; t <= 10; ++t) {
    QVec v = bad;
    for (int i = 0; i < 4; ++i) v[i] += Rat(t) * good[i];
    if (!lefschetz_type(a, v)) ++fails;
  }
  CHECK(fails == 0);
}

TEST_CASE("closures of small generator sets") {
  GradedAlgebra a = standard_model(4, 1);
  QVec e1 = unit_vec(4, 0);
  LieSpan sl2 = lie_closure(a, {mult_operator(a, e1), lefschetz_dual(a, e1)});
  CHECK(sl2.dim() == 3);
  CHECK(sl2.contains(grading_operator(a)));

  LieSpan habel = lie_closure(a, {grading_operator(a)});
  CHECK(habel.dim() == 1);
  CHECK(killing_inertia(habel) == Inertia{0, 0, 1});
}

TEST_CASE("closure is canonical: generator order does not matter") {
  GradedAlgebra a = standard_model(4, 1);
  QVec e1 = unit_vec(4, 0), e2 = unit_vec(4, 1);
  std::vector<QMat> gens = {mult_operator(a, e1), lefschetz_dual(a, e1), mult_operator(a, e2),
                            lefschetz_dual(a, e2)};
  LieSpan g1 = lie_closure(a, gens);
  std::reverse(gens.begin(), gens.end());
  LieSpan g2 = lie_closure(a, gens);
  CHECK(g1.same_span(g2));
  // idempotence: closing again changes nothing
  LieSpan g3 = lie_closure(a, g1.basis());
  CHECK(g1.same_span(g3));
}

TEST_CASE("structure algebra dimensions and killing inertia") {
  struct Row {
    int b, m, dim;
    Inertia killing;
  };
  // dim = (b+2)(b+1)/2 and so(4, b-2) Killing inertia (4(b-2), 6+(b-2)(b-3)/2)
  std::vector<Row> rows = {
      {4, 1, 15, {8, 7, 0}},
      {5, 1, 21, {12, 9, 0}},
      {5, 2, 21, {12, 9, 0}},
  };
  for (const Row& row : rows) {
    GradedAlgebra a = standard_model(row.b, row.m);
    LieSpan g = structure_lie_algebra(a, {7, 64, 3});
    CHECK(g.dim() == row.dim);
    CHECK(killing_inertia(g) == row.killing);
    CHECK(g.contains(grading_operator(a)));
    // killing form is ad-invariant: B([z,x],y) + B(x,[z,y]) = 0
    QMat bk = killing_gram(g);
    for (int zi = 0; zi < 3; ++zi)
      for (int xi = 0; xi < 3; ++xi)
        for (int yi = 0; yi < 3; ++yi) {
          auto cx = g.coordinates(bracket(g.basis()[zi], g.basis()[xi]));
          auto cy = g.coordinates(bracket(g.basis()[zi], g.basis()[yi]));
          REQUIRE(cx);
          REQUIRE(cy);
          Rat lhs(0);
          for (int k = 0; k < g.dim(); ++k) {
            lhs += (*cx)[k] * bk(k, yi);
            lhs += (*cy)[k] * bk(xi, k);
          }
          CHECK(is_zero(lhs));
        }
  }
}

TEST_CASE("invariant symmetric forms of the structure algebra (m = 1)") {
  for (int b : {4, 5}) {
    GradedAlgebra a = standard_model(b, 1);
    LieSpan g = structure_lie_algebra(a, {7, 64, 3});
    auto forms = invariant_symmetric_forms(g);
    REQUIRE(forms.size() == 1);
    Inertia in = inertia_exact(forms[0]);
    bool expected = (in == Inertia{4, b - 2, 0}) || (in == Inertia{b - 2, 4, 0});
    CHECK(expected);
  }
}

TEST_CASE("the signed Poincare form is sl2-invariant") {
  GradedAlgebra a = standard_model(4, 1);
  int n = a.total_dim();
  // B(x, y) = (-1)^{i/2} trace(xy) on A_i x A_{2d-i}
  QMat bform(n, n);
  for (int i = 0; i <= a.top_degree; i += 2) {
    int j = a.top_degree - i;
    for (int alpha = 0; alpha < a.dim(i); ++alpha)
      for (int beta = 0; beta < a.dim(j); ++beta) {
        Rat sign((i / 2) % 2 ? -1 : 1);
        bform(a.offset(i) + alpha, a.offset(j) + beta) =
            sign * a.trace_of(a.mult_basis(i, alpha, j, beta));
      }
  }
  CHECK(bform.is_symmetric());
  QVec e1 = unit_vec(4, 0);
  for (const QMat& g : {mult_operator(a, e1), lefschetz_dual(a, e1)})
    CHECK(QMat(bform * g + g.transpose() * bform).all_zero());
}

TEST_CASE("graded parts of closures") {
  GradedAlgebra a = standard_model(4, 1);
  LieSpan g = structure_lie_algebra(a, {7, 64, 3});
  auto parts = g.graded_parts();
  CHECK(parts[0].size() == 7);  // dim so(3,1) + 1
  int total = 0;
  for (auto& [deg, bucket] : parts) total += static_cast<int>(bucket.size());
  CHECK(total == g.dim());

  LieSpan habel = lie_closure(a, {grading_operator(a)});
  auto hp = habel.graded_parts();
  CHECK(hp.size() == 1);
  CHECK(hp.count(0) == 1);
}
