// Shared sp(4) table fixtures: one entry per reduction case of the
// classification theorem, with the expected table kind and verdict. Used by
// the sp4 unit tests and by the acceptance runner, which replays every
// certificate against the claimed identities.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <string>
#include <vector>

#include "sp4reduce/diffop.hpp"
#include "sp4reduce/kovacic.hpp"
#include "sp4reduce/linsys.hpp"
#include "sp4reduce/parse.hpp"
#include "sp4reduce/sp4.hpp"

namespace sp4test {

using namespace sp4reduce;

struct Sp4Case {
  const char* name;
  const char* extension;  // squarefree-free raw D, or nullptr for Q(i)(t)
  TableKind kind;
  Verdict verdict;
  const char* a12;
  const char* a14;
  const char* a13;
  const char* a24;
  const char* a22;
};

inline const std::vector<Sp4Case>& sp4_cases() {
  static const std::vector<Sp4Case> cases = {
      // Trivial core: abelianity is decided by limited integration of the
      // two unipotent coefficients.
      {"tgn-poly", nullptr, TableKind::TrivialGN, Verdict::Abelian,
       "t", "t^2", "t^3", "0", "0"},
      {"tgn-dependent", nullptr, TableKind::TrivialGN, Verdict::Abelian,
       "1/t", "2/t", "0", "0", "0"},
      {"tgn-mixed", nullptr, TableKind::TrivialGN, Verdict::Abelian,
       "2*t", "1/t", "1", "0", "0"},
      {"tgn-zero", nullptr, TableKind::TrivialGN, Verdict::Abelian,
       "0", "3/(2*t)", "t", "0", "0"},
      {"tgn-radical", "t^2 + 1", TableKind::TrivialGN, Verdict::Abelian,
       "t", "t^2 + 1", "sqrtD", "0", "0"},
      {"tgn-logs", nullptr, TableKind::TrivialGN, Verdict::NonAbelian,
       "1/t", "1/(t - 1)", "0", "0", "0"},
      {"tgn-logpair", nullptr, TableKind::TrivialGN, Verdict::NonAbelian,
       "1/t", "1/(t^2 - 1)", "t", "0", "0"},
      {"tgn-radical-log", "t^2 + 1", TableKind::TrivialGN,
       Verdict::NonAbelian, "1/t", "t/(t^2 + 1)", "0", "0", "0"},

      // Additive core: two staged limited integrations align m1 and m2 with
      // the surviving direction ma + alpha1 m1 + alpha2 m2.
      {"add-zero", nullptr, TableKind::Additive, Verdict::Abelian,
       "0", "0", "0", "1/t", "0"},
      {"add-poly", nullptr, TableKind::Additive, Verdict::Abelian,
       "t", "t^2", "t", "1/t", "0"},
      {"add-align", nullptr, TableKind::Additive, Verdict::Abelian,
       "1/t", "0", "0", "2/t", "0"},
      {"add-partial", nullptr, TableKind::Additive, Verdict::Abelian,
       "3/(t^2 - 1)", "t", "0", "1/(t^2 - 1)", "0"},
      {"add-radical", "t^2 + 1", TableKind::Additive, Verdict::Abelian,
       "t", "(t/(t^2 + 1))*sqrtD", "0", "1/t", "0"},
      {"add-stage1", nullptr, TableKind::Additive, Verdict::NonAbelian,
       "1/(t - 1)", "0", "0", "1/t", "0"},
      {"add-stage2", nullptr, TableKind::Additive, Verdict::NonAbelian,
       "0", "1/(t - 1)", "0", "1/t", "0"},
      {"add-rates", nullptr, TableKind::Additive, Verdict::NonAbelian,
       "1/t + 1/(t - 2)", "0", "t", "1/(t - 1)", "0"},

      // Multiplicative core: two first-order Risch equations align the
      // unipotent block with the semisimple direction mm.
      {"mul-basic", nullptr, TableKind::Multiplicative, Verdict::Abelian,
       "2*t + t^3", "-1/t^2 - 1", "0", "0", "t"},
      {"mul-zero", nullptr, TableKind::Multiplicative, Verdict::Abelian,
       "0", "0", "t", "0", "t"},
      {"mul-deg2", nullptr, TableKind::Multiplicative, Verdict::Abelian,
       "3*t^2 + t^5", "1 - t^3", "0", "0", "t^2"},
      {"mul-neg", nullptr, TableKind::Multiplicative, Verdict::Abelian,
       "0", "0", "0", "0", "1/t^2"},
      {"mul-radical", "t^2 + 1", TableKind::Multiplicative, Verdict::Abelian,
       "(t/(t^2 + 1))*sqrtD + t*sqrtD", "0", "0", "0", "t"},
      {"mul-y1", nullptr, TableKind::Multiplicative, Verdict::NonAbelian,
       "1", "0", "0", "0", "t"},
      {"mul-y2", nullptr, TableKind::Multiplicative, Verdict::NonAbelian,
       "0", "1", "0", "0", "t"},
      {"mul-both", nullptr, TableKind::Multiplicative, Verdict::NonAbelian,
       "t", "0", "1", "0", "t^2"},

      // Triangular core with both slots: decided by the character order of
      // the rate, and honestly inconclusive at finite order.
      {"borel-nonrat", nullptr, TableKind::Borel, Verdict::NonAbelian,
       "0", "0", "0", "1/(t - 1)", "i/t"},
      {"borel-halfint", nullptr, TableKind::Borel, Verdict::Inconclusive,
       "0", "0", "0", "1", "1/(2*t)"},
      {"borel-poly", nullptr, TableKind::Borel, Verdict::NonAbelian,
       "0", "0", "0", "1", "t"},
  };
  return cases;
}

inline FieldPtr case_field(const Sp4Case& c) {
  if (c.extension == nullptr) return make_rational_field("t");
  return make_extension_field("t", parse_poly("t", c.extension), false);
}

// The normalized 4x4 matrix of the case: all five directions have first
// column and third row zero, so the case is already in normalized shape.
inline MatrixOverField case_matrix(const FieldPtr& k, const Sp4Case& c) {
  const Sp4Basis& mb = sp4_basis();
  MatrixOverField a(k, 4, 4);
  a = a + embed(k, mb.m1) * parse_element(k, c.a12);
  a = a + embed(k, mb.m2) * parse_element(k, c.a14);
  a = a + embed(k, mb.m3) * parse_element(k, c.a13);
  a = a + embed(k, mb.ma) * parse_element(k, c.a24);
  a = a + embed(k, mb.mm) * parse_element(k, c.a22);
  return a;
}

inline MatrixOverField core_of(const MatrixOverField& a_n) {
  MatrixOverField n(a_n.field(), 2, 2);
  n.at(0, 0) = a_n.at(1, 1);
  n.at(0, 1) = a_n.at(1, 3);
  n.at(1, 0) = a_n.at(3, 1);
  n.at(1, 1) = a_n.at(3, 3);
  return n;
}

struct CaseRun {
  FieldPtr k;
  MatrixOverField a_n;
  ClassificationResult cls;
  TableForm table;
  AbelianityCertificate cert;
};

inline CaseRun run_case(const Sp4Case& c, int degree_cap = 64) {
  CaseRun r;
  r.k = case_field(c);
  r.a_n = case_matrix(r.k, c);
  r.cls = classify_and_reduce(core_of(r.a_n), degree_cap);
  r.table = table_form(r.a_n, r.cls, degree_cap);
  r.cert = solve_abelian(r.table, degree_cap);
  return r;
}

// Replays a certificate against the identities it claims. Returns the names
// of the checks that failed; an empty list means the replay passed.
inline std::vector<std::string> replay_certificate(const TableForm& table,
                                                   const AbelianityCertificate& cert,
                                                   int degree_cap = 64) {
  std::vector<std::string> failed;
  auto check = [&](bool ok, const char* what) {
    if (!ok) failed.emplace_back(what);
  };
  check(is_symplectic(cert.gauge), "certificate gauge is symplectic");
  check(gauge(cert.gauge, table.b) == cert.b_final,
        "certificate gauge reproduces the final matrix");
  const FieldPtr& k = table.b.field();
  if (cert.verdict == Verdict::Abelian) {
    check(cert.span_abelian, "abelian verdict carries an abelian span");
    check(cert.span_basis.size() == cert.span_coefficients.size(),
          "span coefficients match the span basis");
    bool brackets_ok = true;
    for (size_t a = 0; a < cert.span_basis.size(); ++a)
      for (size_t b = a + 1; b < cert.span_basis.size(); ++b)
        if (!bracket(cert.span_basis[a], cert.span_basis[b]).is_zero())
          brackets_ok = false;
    check(brackets_ok, "span basis commutes");
    MatrixOverField rebuilt(k, 4, 4);
    for (size_t j = 0; j < cert.span_basis.size(); ++j)
      rebuilt = rebuilt + embed(k, cert.span_basis[j]) * cert.span_coefficients[j];
    check(rebuilt == cert.b_final, "final matrix lies in the certified span");
  } else if (cert.verdict == Verdict::NonAbelian) {
    check(cert.obstruction.has_value(), "non-abelian verdict names an obstruction");
    // Independent re-run of the solver stage that failed.
    switch (cert.kind) {
      case TableKind::TrivialGN: {
        IntegrableCombinations ic =
            integrable_combinations({table.a12, table.a14}, degree_cap);
        check(ic.coefficient_basis.empty(),
              "trivial-core solver finds no integrable combination");
        break;
      }
      case TableKind::Additive: {
        IntegrableCombinations ic1 =
            integrable_combinations({table.a12, table.a24}, degree_cap);
        bool stage1 = false;
        for (const auto& row : ic1.coefficient_basis)
          if (!row[0].is_zero()) stage1 = true;
        if (!stage1) {
          check(cert.primitives.empty(), "stage-one failure has no primitive");
        } else {
          check(cert.primitives.size() == 1 && cert.alphas.size() == 1,
                "stage-two failure keeps the stage-one primitive");
          if (cert.primitives.size() == 1 && cert.alphas.size() == 1) {
            check(cert.primitives[0].derive() ==
                      table.a12 - table.a24 * fe(k, cert.alphas[0]),
                  "stage-one primitive verifies");
            FieldElement rhs = table.a14 - table.a24 * cert.primitives[0];
            IntegrableCombinations ic2 =
                integrable_combinations({rhs, table.a24}, degree_cap);
            bool stage2 = false;
            for (const auto& row : ic2.coefficient_basis)
              if (!row[0].is_zero()) stage2 = true;
            check(!stage2, "stage-two solver finds no solution");
          }
        }
        break;
      }
      case TableKind::Multiplicative: {
        bool y1_failed = cert.detail.find("y1'") != std::string::npos;
        if (y1_failed)
          check(!risch_solve(-table.a22, table.a12).has_value(),
                "first Risch equation has no solution");
        else
          check(!risch_solve(table.a22, table.a14).has_value(),
                "second Risch equation has no solution");
        break;
      }
      case TableKind::Borel: {
        check(!exp_membership(table.a22).has_value() &&
                  !exp_membership(table.a22 * fe(k, 2)).has_value() &&
                  !exp_membership(table.a22 * fe(k, 3)).has_value(),
              "core rate has no low-order character in K");
        break;
      }
      case TableKind::FullOrUnknown:
        failed.emplace_back("non-abelian verdict on an unreduced table");
        break;
    }
    if (cert.obstruction) {
      // The obstruction operator must have no solution beside the ones the
      // verdict already accounts for: its rational kernel holds constants
      // only (the primitive shift), never a usable new primitive.
      RationalSolutionSpace sols =
          rational_solutions(*cert.obstruction, degree_cap);
      bool constants_only = true;
      for (const auto& y : sols.basis)
        if (!y.is_constant()) constants_only = false;
      // First-order obstructions (Risch stages) have no constant kernel at
      // all unless the rate vanishes; order >= 2 keeps the constant line.
      if (cert.kind == TableKind::TrivialGN || cert.kind == TableKind::Additive)
        check(constants_only, "obstruction kernel holds constants only");
      else
        check(sols.basis.empty(), "obstruction kernel is empty");
    }
  }
  return failed;
}

}  // namespace sp4test
