#pragma once

#include <string>

#include "hk/algebra.hpp"
#include "hk/apolar.hpp"

namespace hk {

/// Canonical JSON for a model: {"top_degree", "dims", "mult", "trace",
/// "reference_form", "meta"}. mult lists [i,alpha,j,beta,gamma,"c"] for
/// i <= j (and alpha <= beta when i == j), nonzero constants only.
std::string save_model(const GradedAlgebra& a);
GradedAlgebra load_model(const std::string& text);

std::string save_lattice(const IntegralLattice& l);
IntegralLattice load_lattice(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace hk
