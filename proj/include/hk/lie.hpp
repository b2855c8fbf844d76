#pragma once

#include "hk/algebra.hpp"

namespace hk {

/// Bracket-closed span of endomorphisms of a graded algebra. The basis is
/// kept in reduced row-echelon form over the fixed flattening (degree-major
/// total basis, row-major entries), so equal subalgebras have equal bases.
class LieSpan {
 public:
  explicit LieSpan(const GradedAlgebra* a) : alg_(a), n_(a->total_dim()) {}

  const GradedAlgebra& algebra() const { return *alg_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<QMat>& basis() const { return basis_; }
  bool closed() const { return closed_; }

  /// Reduce m against the basis; insert the residual if nonzero.
  bool insert(const QMat& m);
  /// Residual of m after reduction (zero iff m lies in the span).
  QMat reduce(const QMat& m) const;
  bool contains(const QMat& m) const { return reduce(m).all_zero(); }
  /// Coordinates of m in the basis; nullopt if m is outside the span.
  std::optional<QVec> coordinates(const QMat& m) const;

  /// Iterate span <- span + [span, span] until the dimension stabilizes.
  void close();

  bool same_span(const LieSpan& o) const;

  /// Decomposition into pure map-degree components: degree -> dimension,
  /// with the component bases. Also verifies components stay in the span.
  std::map<int, std::vector<QMat>> graded_parts() const;

 private:
  const GradedAlgebra* alg_;
  int n_;
  std::vector<QMat> basis_;      // rows of an RREF matrix, as endomorphisms
  std::vector<int> pivots_;      // pivot flat index per basis element
  bool closed_ = false;
};

LieSpan lie_closure(const GradedAlgebra& a, const std::vector<QMat>& generators);

/// Killing Gram matrix B(x,y) = trace(ad x . ad y) on the basis.
QMat killing_gram(const LieSpan& g);
Inertia killing_inertia(const LieSpan& g);

/// Basis of symmetric forms B on the total space with
/// B(gx, y) + B(x, gy) = 0 for every basis element of g. With `block` set,
/// only forms supported on the A_block x A_block diagonal block are allowed.
std::vector<QMat> invariant_symmetric_forms(const LieSpan& g,
                                            std::optional<int> block = std::nullopt);

struct SamplerConfig {
  std::uint64_t seed = 1;
  int max_extra = 64;   // cap on random Lefschetz elements beyond the basis
  int stable_window = 3;
};

/// Closure of {L_a, Lambda_a} over a deterministic sample of Lefschetz-type
/// elements of A_2. Throws NoLefschetzElement when sampling finds none.
LieSpan structure_lie_algebra(const GradedAlgebra& a, const SamplerConfig& cfg);

}  // namespace hk
