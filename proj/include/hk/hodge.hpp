#pragma once

#include "hk/lie.hpp"

namespace hk {

/// Three degree-2 classes spanning a positive q-orthogonal 3-plane with a
/// common norm, each of Lefschetz type, with cached Lefschetz duals.
struct HKTriple {
  QVec x, y, z;
  QMat lx, ly, lz;    // multiplication operators
  QMat dx, dy, dz;    // Lefschetz duals
};

struct RatDir {
  Rat a, b, c;  // rational point on the unit sphere
};

/// The five equations of the hyperkahler membership set, plus positivity.
bool d_member(const QMat& q, const QVec& x, const QVec& y, const QVec& z);

/// Validates the triple invariants and caches operators; throws on failure.
HKTriple make_hk_triple(const GradedAlgebra& a, const QVec& x, const QVec& y, const QVec& z);

/// Deterministic triples: the base q-orthogonal positive triple, then its
/// images under seeded Cayley transforms in O(q).
std::vector<HKTriple> sample_hk_triples(const GradedAlgebra& a, int count, std::uint64_t seed);

/// Closure of the three Lefschetz pairs of the triple.
LieSpan so5_closure(const GradedAlgebra& a, const HKTriple& t);

/// Degree-0 derivation of the complex structure a*I + b*J + c*K: rotates the
/// triple plane, kills its q-orthocomplement in A_2, extends by Leibniz.
QMat weil_operator(const GradedAlgebra& a, const HKTriple& t, const RatDir& dir);

/// -(W_I^2 + W_J^2 + W_K^2); acts on weight-w isotypic blocks by w(w+2).
QMat casimir_operator(const GradedAlgebra& a, const HKTriple& t);

struct IsotypicBlock {
  int degree = 0;  // cohomological degree 2i
  int weight = 0;  // w
  Subspace<Rat> space;  // inside A_{2i}
};

std::vector<IsotypicBlock> su2_isotypic(const GradedAlgebra& a, const HKTriple& t);

/// Bogomolov-Beauville form on A_2 recovered from the SU(2)-invariant
/// splitting: the common Lefschetz value on the triple plane, the
/// Hodge-Riemann pairing on the invariant part, zero across.
QMat bb_extract(const GradedAlgebra& a, const HKTriple& t);

struct GradedPairing {
  std::vector<int> degrees;   // cohomological degrees carrying a form
  std::vector<QMat> forms;    // one symmetric form per listed degree
};

/// Per-degree pairing induced by the symmetric powers of the extracted BB
/// form; verified non-degenerate and definite with sign (-1)^{(2i-w)/2} on
/// every isotypic block refined by the Lefschetz level of x.
GradedPairing generalized_pairing(const GradedAlgebra& a, const HKTriple& t);

/// Closure of Weil operators over several triples and directions.
LieSpan mumford_tate_algebra(const GradedAlgebra& a, const std::vector<HKTriple>& triples,
                             const std::vector<RatDir>& dirs);

struct DegreeZeroMatch {
  bool equal = false;
  int dim_g0 = 0;       // degree-0 part of g(A)
  int dim_gm_h = 0;     // g_M + span(H)
  std::string note;     // records the Id-vs-H comparison convention
};

DegreeZeroMatch degree_zero_match(const LieSpan& ga, const LieSpan& gm);

/// Rational unit directions for Weil operators (axes + Pythagorean points).
std::vector<RatDir> standard_directions(int count);

}  // namespace hk
