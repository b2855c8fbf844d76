#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hk/forms.hpp"

namespace hk {

using QMat = Mat<Rat>;
using QVec = std::vector<Rat>;

/// Graded Frobenius algebra given by structure constants on a graded basis.
/// Component i has dimension dims[i]; the total basis is ordered degree-major.
/// mult(i,j) maps (alpha * dims[j] + beta) -> coefficient row over A_{i+j}.
class GradedAlgebra {
 public:
  int top_degree = 0;                 // 2d
  std::vector<int> dims;              // size top_degree + 1
  std::map<std::pair<int, int>, QMat> mult;  // stored for i <= j
  QVec trace;                         // functional on A_{top_degree}
  std::optional<QMat> reference_form; // the model's q on A_2
  std::map<std::string, std::string> meta;

  int half() const { return top_degree / 2; }
  int dim(int i) const { return (i >= 0 && i <= top_degree) ? dims[i] : 0; }
  int total_dim() const;
  int offset(int i) const;  // start of A_i in the total basis

  /// product of basis elements: x_alpha in A_i times x_beta in A_j
  QVec mult_basis(int i, int alpha, int j, int beta) const;
  /// product of coefficient vectors supported on A_i and A_j
  QVec mult_vec(int i, const QVec& x, int j, const QVec& y) const;
  /// trace of a top-degree coefficient vector
  Rat trace_of(const QVec& top) const;

  const QMat* table(int i, int j) const;
};

struct CheckEntry {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<CheckEntry> entries;
  void add(const std::string& name, bool pass, const std::string& detail = "");
};

/// Associativity on all basis triples, graded commutativity, unit,
/// non-degenerate Poincare pairing.
ValidationReport validate_algebra(const GradedAlgebra& a);

//------------------------------------------------------------------------------
// Endomorphisms of the total space (degree-major basis order)
//------------------------------------------------------------------------------

/// H: acts on A_i as (i - d) * id.
QMat grading_operator(const GradedAlgebra& a);

/// L_a for a in A_2: left multiplication by a on every component.
QMat mult_operator(const GradedAlgebra& a, const QVec& a2);

/// Block of an endomorphism mapping A_i into A_j.
QMat endo_block(const GradedAlgebra& a, const QMat& m, int i, int j);

/// Projection of an endomorphism onto its pure map-degree-delta part.
QMat endo_degree_part(const GradedAlgebra& a, const QMat& m, int delta);

/// Map degrees with a nonzero block.
std::vector<int> endo_degrees(const GradedAlgebra& a, const QMat& m);

/// Embed a matrix acting on A_i as an endomorphism vanishing elsewhere.
QMat embed_block(const GradedAlgebra& a, const QMat& block, int i, int j);

/// True iff L_a^k : A_{d-k} -> A_{d+k} is an isomorphism for k = 1..d.
bool lefschetz_type(const GradedAlgebra& a, const QVec& a2);

/// The unique degree -2 endomorphism with [L_a, Lambda] = H; throws
/// NotLefschetzType when the linear system has no solution.
QMat lefschetz_dual(const GradedAlgebra& a, const QVec& a2);

}  // namespace hk
