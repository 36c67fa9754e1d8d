// Normalization of a variational system along a known solution: completion
// of the solution vector to a symplectic gauge and extraction of the 2x2
// normal core.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <vector>

#include "sp4reduce/linsys.hpp"

namespace sp4reduce {

// Complete a nonzero vector v in K^4 to a symplectic matrix whose first
// column is v. When v_1 = 0 a constant symplectic change of coordinates is
// applied first, so the result is symplectic for every nonzero v.
MatrixOverField completion_matrix(const std::vector<FieldElement>& v);

struct NormalizedSystem {
  MatrixOverField a_n;  // gauged matrix: first column and third row zero
  MatrixOverField p;    // the symplectic gauge, a_n = p[a]
  MatrixOverField n;    // 2x2 trace-zero core at rows/cols (2, 4)
};

// Gauge a Hamiltonian system matrix by the completion of one of its nonzero
// solutions. Throws degenerate_input when v does not solve d(v) = a v and
// shape_mismatch when the gauged matrix misses the normal-form pattern.
NormalizedSystem normalize_variational(const MatrixOverField& a,
                                       const std::vector<FieldElement>& v);

}  // namespace sp4reduce
