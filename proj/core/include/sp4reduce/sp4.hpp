// Reduction inside sp(4): lifting the reduced core into the full system,
// the five-direction table form, the abelianity decision with its
// certificate, and the integrand simplification of reduced forms.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sp4reduce/kovacic.hpp"
#include "sp4reduce/nve.hpp"

namespace sp4reduce {

enum class Verdict { Abelian, NonAbelian, Inconclusive };
const char* to_string(Verdict v);

// The five sp(4) directions spanned by normalized systems: with E_rc the
// matrix unit,
//   m1 = E12 - E43,  m2 = E14 + E23,  m3 = E13,  ma = E24,  mm = E22 - E44.
struct Sp4Basis {
  ConstMatrix m1, m2, m3, ma, mm;
};
const Sp4Basis& sp4_basis();

// Embed a 2x2 core gauge into Sp(4) acting on rows and columns (2, 4).
// Requires det p = 1.
MatrixOverField lift_reduction(const MatrixOverField& p2);

enum class TableKind {
  TrivialGN,       // core part vanished
  Additive,        // core part a24 * ma with no primitive of a24 in K
  Multiplicative,  // core part a22 * mm with a22 not logarithmic in K
  Borel,           // core part upper triangular, two directions
  FullOrUnknown,   // core not reduced
};
const char* to_string(TableKind k);

// The lifted and reclassified system written over the five directions:
//   b = a12 m1 + a14 m2 + a13 m3 + a24 ma + a22 mm.
struct TableForm {
  TableKind kind = TableKind::FullOrUnknown;
  FieldElement a12, a14, a13, a24, a22;
  MatrixOverField gauge_total;  // accumulated symplectic gauge from a_n
  MatrixOverField b;            // gauge_total[a_n]
  bool reclassified = false;    // a side condition moved the case down
};

// Lift the core classification into Sp(4) and apply the side-condition
// reclassifications (an integrable a24 or a logarithmic-derivative a22 both
// reduce to the trivial core).
TableForm table_form(const MatrixOverField& a_n,
                     const ClassificationResult& cls, int degree_cap = 64);

// Certificate of the abelianity decision. For an Abelian verdict the gauge
// and span data replay the reduction; for NonAbelian the obstruction
// operator witnesses the failed integration problem.
struct AbelianityCertificate {
  Verdict verdict = Verdict::Inconclusive;
  TableKind kind = TableKind::FullOrUnknown;
  MatrixOverField gauge;    // b_final = gauge[table.b]
  MatrixOverField b_final;
  std::vector<std::string> span_names;
  std::vector<ConstMatrix> span_basis;
  std::vector<FieldElement> span_coefficients;  // b_final in span_basis
  bool span_abelian = false;
  std::vector<FieldElement> primitives;  // auxiliary solutions used
  std::vector<QI> alphas;                // constants entering the span
  std::optional<DiffOp> obstruction;     // monic plain-basis operator
  std::vector<ExponentReport> obstruction_exponents;
  std::string detail;
};

// Decide whether the differential Galois Lie algebra of the table form is
// abelian, constructing the reducing gauge or the obstruction.
AbelianityCertificate solve_abelian(const TableForm& table,
                                    int degree_cap = 64);

// The families of maximal abelian subalgebras that reduced forms land in,
// for reporting.
struct SubalgebraFamily {
  std::string description;
  std::vector<std::string> names;
  std::vector<ConstMatrix> basis;  // representative at alpha = 1
};
std::vector<SubalgebraFamily> subalgebra_report();

// Split every splittable coefficient a = d(f) + g of an abelian reduced
// form and gauge the derivative part away with id + sum f_i n_i. A
// direction is splittable when its products with every span direction
// vanish and its coefficient is a plain rational element.
struct SimplifyResult {
  MatrixOverField b;      // simplified matrix
  MatrixOverField gauge;  // b = gauge[input]
  bool changed = false;
};
SimplifyResult simplify_reduced(const MatrixOverField& b,
                                const std::vector<ConstMatrix>& span_basis);

}  // namespace sp4reduce
