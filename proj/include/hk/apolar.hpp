#pragma once

#include "hk/algebra.hpp"

namespace hk {

struct ModelSpec {
  int b = 4;    // dim A_2
  int m = 1;    // half the complex dimension; top degree is 4m
  QMat q;       // symmetric, inertia (3, b-3)
};

/// The graded Frobenius algebra Sym(V)/Ann(F) with Macaulay dual generator
/// F = (inverse form of q)^m: dims follow S^i H^2 below the middle and
/// mirror above it. Throws InertiaMismatch / DegenerateQ on bad q.
GradedAlgebra apolar_model(const ModelSpec& spec);

/// Convenience: q = diag(1,1,1,-1,...,-1).
GradedAlgebra standard_model(int b, int m);

QMat diag_form(const std::vector<int>& entries);

/// Independent trace oracle: sum over perfect matchings of the 2m arguments
/// of the product of q-pairings. The algebra trace of a product of 2m
/// degree-2 elements equals one global constant times this value.
Rat matching_sum(const QMat& q, const std::vector<QVec>& xs);

/// Trace of the product of `xs` (all degree-2) through the algebra.
Rat trace_of_product(const GradedAlgebra& a, const std::vector<QVec>& xs);

struct IntegralLattice {
  int rank = 0;
  QMat gram;  // integral entries
};

/// Validated lattice with symmetric integral Gram of inertia (3, b-3).
IntegralLattice make_lattice(const QMat& gram);

}  // namespace hk
