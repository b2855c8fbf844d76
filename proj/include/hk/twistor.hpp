#pragma once

#include <array>

#include "hk/apolar.hpp"
#include "hk/hodge.hpp"

namespace hk {

using KVec = std::vector<QuadRat>;
using KMat = Mat<QuadRat>;
using KSub = Subspace<QuadRat>;

/// Ambient period space: a rational form of inertia (3, b-3) and the scalar
/// context (d == 0: rational only; d > 1: Q(sqrt d)).
struct PeriodSpace {
  int b = 0;
  QMat gram;
  int d = 0;
};

PeriodSpace make_period_space(const QMat& gram, int d);

/// The line span(u + i v) on the period quadric: q(u,u) = q(v,v) > 0 and
/// q(u,v) = 0, so (l,l) = 0 and (l, conj l) > 0.
struct PeriodPoint {
  KVec u, v;
};

PeriodPoint make_period_point(const PeriodSpace& ps, const KVec& u, const KVec& v);

/// Positive 3-plane with a q-orthogonal frame of common norm.
struct TwistorPlane {
  KSub space;
  std::array<KVec, 3> frame;
  QuadRat norm;
};

struct TwistorPath {
  std::vector<TwistorPlane> edges;                 // W_0 .. W_k
  std::vector<std::optional<PeriodPoint>> vertices;  // x_1 .. x_k
  std::optional<PeriodPoint> endpoint_start, endpoint_end;
  int length() const { return static_cast<int>(edges.size()) - 1; }
};

KVec lift_vec(const QVec& v);
QuadRat q_eval(const PeriodSpace& ps, const KVec& x, const KVec& y);

TwistorPlane plane_make(const PeriodSpace& ps, const KVec& x, const KVec& y, const KVec& z);

PeriodPoint period_of_induced(const PeriodSpace& ps, const TwistorPlane& w, const RatDir& dir);

struct IntersectResult {
  bool intersect = false;
  KSub shared;
  std::vector<PeriodPoint> vertices;  // the two conjugates, when constructible
  bool rational_vertex = true;        // false records a NoRationalVertex note
};

IntersectResult lines_intersect(const PeriodSpace& ps, const TwistorPlane& w1,
                                const TwistorPlane& w2);

/// Chain of planes from w to w2 with consecutive intersections of dimension
/// >= 2, built from exact q-isometries so frames keep their norms.
TwistorPath connect_planes(const PeriodSpace& ps, const TwistorPlane& w, const TwistorPlane& w2);

struct PathCheck {
  bool ok = true;
  std::vector<CheckEntry> entries;
};

/// Independent validator: positivity of every edge, consecutive intersection
/// dimensions, vertex invariants and membership. Never trusts builder state.
PathCheck validate_path(const PeriodSpace& ps, const TwistorPath& path);

//------------------------------------------------------------------------------
// Integral lattices, Neron-Severi, admissibility
//------------------------------------------------------------------------------

/// Saturated sublattice of Z^b, rows of an integer basis matrix in
/// Hermite-reduced canonical form (empty matrix for the zero lattice).
struct NSLattice {
  int ambient = 0;
  std::vector<std::vector<mpz_class>> basis;
  int rank() const { return static_cast<int>(basis.size()); }
};

bool ns_equal(const NSLattice& a, const NSLattice& b);
bool ns_contains(const NSLattice& outer, const NSLattice& inner);

/// Integral classes orthogonal to the period: q(., u) = q(., v) = 0 with the
/// sqrt(d) components split into separate rational conditions.
NSLattice neron_severi(const IntegralLattice& lat, const PeriodSpace& ps, const PeriodPoint& l);

/// Degree-2 general-type test: NS(l) equals the integral orthogonal of the
/// plane. The inclusion lattice(W-perp) <= NS(l) always holds and is checked.
bool general_type2(const IntegralLattice& lat, const PeriodSpace& ps, const TwistorPlane& w,
                   const PeriodPoint& l);

NSLattice plane_perp_lattice(const IntegralLattice& lat, const PeriodSpace& ps,
                             const TwistorPlane& w);

struct AdmissibilityReport {
  bool ok = true;
  std::vector<CheckEntry> entries;
};

/// general_type2 for both endpoints and for every vertex against both
/// adjacent edges.
AdmissibilityReport is_admissible(const IntegralLattice& lat, const PeriodSpace& ps,
                                  const TwistorPath& path);

struct WalkConfig {
  std::uint64_t seed = 1;
  int max_tries = 400;
  unsigned max_height = 20;
};

/// Admissible path between periods with NS(I) = NS(I') = Q, both induced by
/// positive 3-planes inside the rational subspace Q-perp (which must be
/// 4-dimensional of inertia (3,1)). Edges are built from one-vector frame
/// steps so every vertex is a frame pair.
TwistorPath connect_admissible(const IntegralLattice& lat, const PeriodSpace& ps,
                               const NSLattice& q_sub, const PeriodPoint& i0,
                               const PeriodPoint& i1, const WalkConfig& cfg);

/// Seeded irrational plane inside the orthogonal complement of q_sub, for
/// demos and acceptance instances.
TwistorPlane sample_plane_in_perp(const IntegralLattice& lat, const PeriodSpace& ps,
                                  const NSLattice& q_sub, std::uint64_t seed);

/// Seeded instance pair for the admissibility demos: two distinct irrational
/// periods with the target Neron-Severi lattice, drawn from the pencil of
/// planes through a common positive 2-plane so an admissible path exists
/// over the scalar field.
std::pair<PeriodPoint, PeriodPoint> sample_admissible_pair(const IntegralLattice& lat,
                                                           const PeriodSpace& ps,
                                                           const NSLattice& q_sub,
                                                           std::uint64_t seed);

/// Seeded rational-isometry image of the base positive plane (e1,e2,e3).
TwistorPlane sample_plane(const PeriodSpace& ps, std::uint64_t seed);

std::string save_path(const PeriodSpace& ps, const TwistorPath& path);
TwistorPath load_path(const std::string& text, PeriodSpace* ps_out);

NSLattice span_lattice(int ambient, const std::vector<std::vector<long>>& gens);

}  // namespace hk
