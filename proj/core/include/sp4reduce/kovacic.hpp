// Classification of the 2x2 trace-zero normal core after the manner of the
// Kovacic algorithm: decide how much of the solution space lives in K and
// reduce the core accordingly.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <optional>
#include <vector>

#include "sp4reduce/diffop.hpp"
#include "sp4reduce/linsys.hpp"

namespace sp4reduce {

enum class NveClassification {
  Finite,          // two independent solutions in K^2: core gauges to zero
  Additive,        // exactly one: core gauges to strictly upper triangular
  Multiplicative,  // none in K, two exponential rates: core gauges to diagonal
  Borel,           // none in K, a single exponential rate: upper triangular
  FullOrUnknown,   // nothing found; either irreducible or out of scope
};

const char* to_string(NveClassification c);

// Scalar second-order form of the core via a cyclic coordinate.
struct ScalarForm {
  DiffOp l;   // monic order-2 operator
  int pivot;  // 1 when y = y1 was cyclic (n12 != 0), 2 for the fallback
};
ScalarForm system_to_scalar(const MatrixOverField& n);

struct ClassificationResult {
  NveClassification kind = NveClassification::FullOrUnknown;
  MatrixOverField p;          // 2x2 gauge with det 1
  MatrixOverField n_reduced;  // p[n]: zero, strictly upper, diagonal or upper
  // Dimension of the K-rational solution space of the core.
  int rational_dimension = 0;
  // Exponential rates found for the multiplicative and Borel cases.
  std::vector<FieldElement> rates;
  // False when the exponential-solution search could not cover all cases;
  // FullOrUnknown with complete = true means a genuinely irreducible core.
  bool complete = true;
  std::optional<ScalarForm> scalar;  // absent for the diagonal shortcut
};

// Classify the core and produce the det-1 gauge realizing its reduced form.
// The input must be 2x2 with zero trace.
ClassificationResult classify_and_reduce(const MatrixOverField& n,
                                         int degree_cap = 64);

// Riccati search: all r in K with d(y) = r y for some nonzero formal
// solution of the monic second-order operator l, together with a
// completeness flag for the search.
struct RiccatiSolutions {
  std::vector<FieldElement> rates;
  bool complete = true;
};
RiccatiSolutions exponential_rates(const DiffOp& l, int degree_cap = 64);

}  // namespace sp4reduce
