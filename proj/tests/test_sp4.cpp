// Unit tests for the sp(4) reduction table and the abelianity decision:
// table classification, certificate replay for every theorem-case fixture,
// coefficient simplification and the subalgebra families.
//
// This file is part of sp4reduce, released under the MIT license.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>

#include "helpers.hpp"
#include "sp4_cases.hpp"
#include "sp4reduce/errors.hpp"

using namespace sp4reduce;
using sp4test::CaseRun;
using sp4test::Rng;
using sp4test::Sp4Case;

TEST_CASE("sp4 basis matrices are the expected unit combinations") {
  const Sp4Basis& mb = sp4_basis();
  CHECK(mb.m1 == ConstMatrix::unit(4, 0, 1) - ConstMatrix::unit(4, 3, 2));
  CHECK(mb.m2 == ConstMatrix::unit(4, 0, 3) + ConstMatrix::unit(4, 1, 2));
  CHECK(mb.m3 == ConstMatrix::unit(4, 0, 2));
  CHECK(mb.ma == ConstMatrix::unit(4, 1, 3));
  CHECK(mb.mm == ConstMatrix::unit(4, 1, 1) - ConstMatrix::unit(4, 3, 3));
}

TEST_CASE("lift_reduction embeds a 2x2 gauge symplectically") {
  FieldPtr k = make_rational_field("t");
  Rng rng(901);
  for (int it = 0; it < 40; ++it) {
    MatrixOverField p2(k, 2, 2);
    // Unimodular 2x2.
    p2.at(0, 0) = fe(k, 1);
    p2.at(0, 1) = rng.element(k, 1, 2);
    p2.at(1, 1) = fe(k, 1);
    MatrixOverField lifted = lift_reduction(p2);
    CHECK(lifted.rows() == 4);
    CHECK(is_symplectic(lifted));
    // The lift acts on the core slots exactly as p2 does.
    CHECK(lifted.at(1, 1) == p2.at(0, 0));
    CHECK(lifted.at(1, 3) == p2.at(0, 1));
    CHECK(lifted.at(3, 1) == p2.at(1, 0));
    CHECK(lifted.at(3, 3) == p2.at(1, 1));
  }
}

TEST_CASE("every theorem-case fixture lands in its expected table kind") {
  for (const Sp4Case& c : sp4test::sp4_cases()) {
    INFO("fixture ", c.name);
    CaseRun r = sp4test::run_case(c);
    CHECK(r.table.kind == c.kind);
    CHECK_FALSE(r.table.reclassified);
    CHECK(is_symplectic(r.table.gauge_total));
    CHECK(gauge(r.table.gauge_total, r.a_n) == r.table.b);
    CHECK(is_hamiltonian(r.table.b));
  }
}

TEST_CASE("every fixture verdict matches and its certificate replays") {
  int abelian_by_kind[3] = {0, 0, 0};
  int nonabelian_by_kind[3] = {0, 0, 0};
  for (const Sp4Case& c : sp4test::sp4_cases()) {
    INFO("fixture ", c.name);
    CaseRun r = sp4test::run_case(c);
    CHECK(r.cert.verdict == c.verdict);
    auto failures = sp4test::replay_certificate(r.table, r.cert);
    for (const auto& f : failures) {
      INFO("failed replay check: ", f);
      CHECK(false);
    }
    int slot = -1;
    if (c.kind == TableKind::TrivialGN) slot = 0;
    if (c.kind == TableKind::Additive) slot = 1;
    if (c.kind == TableKind::Multiplicative) slot = 2;
    if (slot >= 0 && c.verdict == Verdict::Abelian) ++abelian_by_kind[slot];
    if (slot >= 0 && c.verdict == Verdict::NonAbelian)
      ++nonabelian_by_kind[slot];
  }
  // The fixture set keeps at least five abelian and three non-abelian runs
  // per theorem case.
  for (int slot = 0; slot < 3; ++slot) {
    CHECK(abelian_by_kind[slot] >= 5);
    CHECK(nonabelian_by_kind[slot] >= 3);
  }
}

TEST_CASE("abelian certificates expose verified primitives") {
  for (const Sp4Case& c : sp4test::sp4_cases()) {
    if (c.verdict != Verdict::Abelian) continue;
    INFO("fixture ", c.name);
    CaseRun r = sp4test::run_case(c);
    REQUIRE(r.cert.verdict == Verdict::Abelian);
    const FieldPtr& k = r.k;
    switch (c.kind) {
      case TableKind::TrivialGN: {
        if (r.cert.primitives.size() == 2) {
          CHECK(r.cert.primitives[0].derive() == r.table.a12);
          CHECK(r.cert.primitives[1].derive() == r.table.a14);
        } else {
          REQUIRE(r.cert.primitives.size() == 1);
          REQUIRE(r.cert.alphas.size() == 2);
          // alphas = (-c1, c0) for the achievable row (c0, c1): the
          // primitive integrates c0 a12 + c1 a14.
          CHECK(r.cert.primitives[0].derive() ==
                r.table.a12 * fe(k, r.cert.alphas[1]) -
                    r.table.a14 * fe(k, r.cert.alphas[0]));
        }
        break;
      }
      case TableKind::Additive: {
        if (r.cert.alphas.empty()) {
          REQUIRE(r.cert.primitives.size() == 1);
          CHECK(r.cert.primitives[0].derive() == r.table.a12);
        } else {
          REQUIRE(r.cert.primitives.size() == 2);
          REQUIRE(r.cert.alphas.size() == 2);
          FieldElement y1 = r.cert.primitives[0];
          FieldElement y2 = r.cert.primitives[1];
          CHECK(y1.derive() ==
                r.table.a12 - r.table.a24 * fe(k, r.cert.alphas[0]));
          CHECK(y2.derive() == r.table.a14 - r.table.a24 * y1 -
                                   r.table.a24 * fe(k, r.cert.alphas[1]));
        }
        break;
      }
      case TableKind::Multiplicative: {
        REQUIRE(r.cert.primitives.size() == 2);
        FieldElement y1 = r.cert.primitives[0];
        FieldElement y2 = r.cert.primitives[1];
        CHECK(y1.derive() == r.table.a12 - r.table.a22 * y1);
        CHECK(y2.derive() == r.table.a14 + r.table.a22 * y2);
        break;
      }
      default:
        break;
    }
  }
}

TEST_CASE("non-abelian certificates carry exponent reports") {
  for (const Sp4Case& c : sp4test::sp4_cases()) {
    if (c.verdict != Verdict::NonAbelian) continue;
    INFO("fixture ", c.name);
    CaseRun r = sp4test::run_case(c);
    REQUIRE(r.cert.obstruction.has_value());
    CHECK_FALSE(r.cert.obstruction_exponents.empty());
    CHECK(r.cert.obstruction->lc() == fe(r.cert.obstruction->field(), 1));
    CHECK_FALSE(r.cert.detail.empty());
  }
}

TEST_CASE("inconclusive borel case names the character order") {
  for (const Sp4Case& c : sp4test::sp4_cases()) {
    if (c.verdict != Verdict::Inconclusive) continue;
    CaseRun r = sp4test::run_case(c);
    CHECK(r.cert.verdict == Verdict::Inconclusive);
    CHECK(r.cert.detail.find("character order 2") != std::string::npos);
    CHECK_FALSE(r.cert.obstruction.has_value());
  }
}

TEST_CASE("simplify_reduced removes exact-derivative parts") {
  FieldPtr k = make_rational_field("t");
  const Sp4Basis& mb = sp4_basis();
  FieldElement c1 = parse_element(k, "(1 + t^2)/t");
  FieldElement c3 = parse_element(k, "(t^3 - 4*t^2 + 1)/(t - 4)");
  MatrixOverField m = embed(k, mb.m1) * c1 + embed(k, mb.m3) * c3;
  SimplifyResult s = simplify_reduced(m, {mb.m1, mb.m3});
  CHECK(s.changed);
  CHECK(gauge(s.gauge, m) == s.b);
  MatrixOverField expected = embed(k, mb.m1) * parse_element(k, "1/t") +
                             embed(k, mb.m3) * parse_element(k, "1/(t - 4)");
  CHECK(s.b == expected);
  MatrixOverField q = MatrixOverField::identity(k, 4) +
                      embed(k, mb.m1) * parse_element(k, "t^2/2") +
                      embed(k, mb.m3) * parse_element(k, "t^3/3");
  CHECK(s.gauge == q);
}

TEST_CASE("simplify_reduced is idempotent and honest about no-ops") {
  FieldPtr k = make_rational_field("t");
  const Sp4Basis& mb = sp4_basis();
  MatrixOverField m = embed(k, mb.m1) * parse_element(k, "1/t");
  SimplifyResult s = simplify_reduced(m, {mb.m1, mb.m3});
  CHECK_FALSE(s.changed);
  CHECK(s.b == m);
  CHECK(s.gauge == MatrixOverField::identity(k, 4));

  // Spans with non-vanishing products are left untouched.
  MatrixOverField mm = embed(k, mb.mm) * parse_element(k, "t");
  SimplifyResult s2 = simplify_reduced(mm, {mb.mm});
  CHECK_FALSE(s2.changed);
}

TEST_CASE("subalgebra_report lists abelian families") {
  auto families = subalgebra_report();
  CHECK(families.size() >= 4);
  for (const auto& f : families) {
    CHECK_FALSE(f.description.empty());
    CHECK(f.names.size() == f.basis.size());
    for (size_t a = 0; a < f.basis.size(); ++a)
      for (size_t b = a + 1; b < f.basis.size(); ++b)
        CHECK(bracket(f.basis[a], f.basis[b]).is_zero());
  }
}

TEST_CASE("table_form rejects inconsistent inputs") {
  FieldPtr k = make_rational_field("t");
  const Sp4Basis& mb = sp4_basis();
  MatrixOverField a_n = embed(k, mb.m1) * fe_var(k);
  ClassificationResult cls;  // FullOrUnknown with detached matrices
  cls.p = MatrixOverField::identity(k, 2);
  cls.n_reduced = MatrixOverField(k, 2, 2);
  TableForm t = table_form(a_n, cls);
  CHECK(t.kind == TableKind::FullOrUnknown);
}

TEST_CASE("borel table certificates for finite orders stay undecided") {
  // a22 = 3/(2t) has character order 2 as well: exp(2 int a22) = t^3.
  Sp4Case c{"borel-threehalf", nullptr, TableKind::Borel,
            Verdict::Inconclusive, "0", "0", "0", "1/(t - 1)", "3/(2*t)"};
  CaseRun r = sp4test::run_case(c);
  CHECK(r.table.kind == TableKind::Borel);
  CHECK(r.cert.verdict == Verdict::Inconclusive);
}
