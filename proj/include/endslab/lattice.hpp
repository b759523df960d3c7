#pragma once

#include <vector>

#include "endslab/graph.hpp"

namespace endslab {

// Coset oracle for Z^n / K where K is the sublattice spanned by `basis`.
// Coset ids are the canonical residues modulo an echelon form of the basis.
CosetPtr lattice_coset_oracle(int n, std::vector<std::vector<long long>> basis);

}  // namespace endslab
