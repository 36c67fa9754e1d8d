// Unit tests for Ore operators and the attached solvers: local exponents,
// rational kernels, first-order equations and limited integration. The
// solver results are cross-checked against brute-force bounded ansatz
// oracles and against planted solutions.
//
// This file is part of sp4reduce, released under the MIT license.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oracle.hpp"
#include "sp4reduce/diffop.hpp"
#include "sp4reduce/errors.hpp"
#include "sp4reduce/parse.hpp"

using namespace sp4reduce;
using sp4test::Rng;
using sp4test::pv;
using sp4test::q;

namespace {

FieldPtr plain() { return make_rational_field("t"); }

DiffOp random_op(Rng& rng, const FieldPtr& k, int max_order, int coeff_deg,
                 bool rational_only) {
  int order = rng.pick(1, max_order);
  std::vector<FieldElement> c;
  for (int j = 0; j < order; ++j)
    c.emplace_back(k, RatFun(rng.poly(rng.pick(0, coeff_deg))));
  for (;;) {
    Poly lead = rng.poly(rng.pick(0, coeff_deg));
    if (lead.is_zero()) continue;
    c.emplace_back(k, RatFun(lead));
    break;
  }
  if (rational_only) {
    // Strip imaginary parts so the instance lives over Q(t).
    for (auto& e : c) {
      std::vector<QI> nc, dc;
      for (const auto& x : e.base().num().coeffs()) nc.emplace_back(x.re());
      for (const auto& x : e.base().den().coeffs()) dc.emplace_back(x.re());
      Poly den(dc);
      if (den.is_zero()) den = pv({1});
      e = FieldElement(k, RatFun(Poly(nc), den));
    }
    if (c.back().is_zero()) c.back() = fe(k, 1);
  }
  return DiffOp(k, c);
}

bool in_qi_span(const FieldElement& y, const std::vector<FieldElement>& basis) {
  std::vector<FieldElement> family = {y};
  family.insert(family.end(), basis.begin(), basis.end());
  for (const auto& rel : qi_relations(family))
    if (!rel[0].is_zero()) return true;
  return false;
}

}  // namespace

TEST_CASE("composition is operator application") {
  FieldPtr k = plain();
  Rng rng(501);
  for (int it = 0; it < 60; ++it) {
    DiffOp l = random_op(rng, k, 2, 2, false);
    DiffOp m = random_op(rng, k, 2, 2, false);
    FieldElement y = rng.element(k, 2, 2);
    CHECK((l * m).apply(y) == l.apply(m.apply(y)));
    CHECK((l + m).apply(y) == l.apply(y) + m.apply(y));
  }
}

TEST_CASE("the commutation rule d c = c d + c'") {
  FieldPtr k = plain();
  FieldElement c = parse_element(k, "t^2 + 1/t");
  DiffOp d = DiffOp::derivation(k);
  DiffOp lhs = d * DiffOp::scalar(c);
  DiffOp rhs = DiffOp::scalar(c) * d + DiffOp::scalar(c.derive());
  CHECK(lhs == rhs);
  CHECK(lhs.order() == 1);
}

TEST_CASE("composition is associative and non-commutative") {
  FieldPtr k = plain();
  Rng rng(502);
  for (int it = 0; it < 40; ++it) {
    DiffOp a = random_op(rng, k, 2, 1, false);
    DiffOp b = random_op(rng, k, 2, 1, false);
    DiffOp c = random_op(rng, k, 2, 1, false);
    CHECK((a * b) * c == a * (b * c));
  }
  DiffOp d = DiffOp::derivation(k);
  DiffOp t = DiffOp::scalar(fe_var(k));
  CHECK(d * t != t * d);
}

TEST_CASE("right division") {
  FieldPtr k = plain();
  Rng rng(503);
  for (int it = 0; it < 100; ++it) {
    DiffOp a = random_op(rng, k, 3, 2, false);
    DiffOp b = random_op(rng, k, 2, 2, false);
    auto [quot, rem] = right_divide(a, b);
    CHECK(quot * b + rem == a);
    CHECK(rem.order() < b.order());
  }
}

TEST_CASE("lclm is divisible by both arguments and kills both kernels") {
  FieldPtr k = plain();
  Rng rng(504);
  for (int it = 0; it < 50; ++it) {
    FieldElement y1 = rng.nonzero_element(k, 2, 2);
    FieldElement y2 = rng.nonzero_element(k, 2, 2);
    DiffOp a(k, {-(y1.derive() / y1), fe(k, 1)});
    DiffOp b(k, {-(y2.derive() / y2), fe(k, 1)});
    DiffOp m = lclm(a, b);
    CHECK(m.order() <= a.order() + b.order());
    CHECK(right_divide(m, a).second.is_zero());
    CHECK(right_divide(m, b).second.is_zero());
    CHECK(m.apply(y1).is_zero());
    CHECK(m.apply(y2).is_zero());
    CHECK(m.lc() == fe(k, 1));
  }
}

TEST_CASE("rebase moves an operator between derivation weights") {
  FieldPtr k = make_extension_field("t", pv({2, 0, -1, 0, 0, 0, 4}), true);
  FieldPtr kp = plain_twin(k);
  // The twisted derivation expands to weight * d_plain.
  DiffOp d = DiffOp::derivation(k);
  DiffOp moved = rebase(d, kp);
  CHECK(moved ==
        DiffOp(kp, {fe(kp, 0), with_field(fe_weight(k), kp)}));
  Rng rng(505);
  for (int it = 0; it < 25; ++it) {
    DiffOp l = random_op(rng, k, 2, 2, false);
    DiffOp lp = rebase(l, kp);
    FieldElement y = rng.element(k, 2, 2);
    CHECK(with_field(l.apply(y), kp) == lp.apply(with_field(y, kp)));
  }
  // Round trip.
  DiffOp l = random_op(rng, k, 2, 2, false);
  CHECK(rebase(rebase(l, kp), k) == l);
}

TEST_CASE("local exponents of an Euler operator") {
  FieldPtr k = plain();
  // t^2 y'' + t y' - 9 y = 0 has solutions t^3 and t^-3.
  DiffOp l(k, {parse_element(k, "-9/t^2"), parse_element(k, "1/t"), fe(k, 1)});
  auto reports = local_exponents(l);
  bool saw_zero = false, saw_inf = false;
  for (const auto& r : reports) {
    if (r.point) {
      CHECK(r.point.value() == pv({0, 1}));
      saw_zero = true;
    } else {
      saw_inf = true;
    }
    REQUIRE(r.exponents.size() == 2);
    std::vector<mpq_class> e = r.exponents;
    std::sort(e.begin(), e.end());
    CHECK(e[0] == q(-3));
    CHECK(e[1] == q(3));
    CHECK(r.regular);
    CHECK(r.indicial_degree == 2);
    CHECK(r.nonrational_count == 0);
  }
  CHECK(saw_zero);
  CHECK(saw_inf);
}

TEST_CASE("local exponents flag irregular and nonrational points") {
  FieldPtr k = plain();
  // y'' = y is irregular at infinity.
  DiffOp airy_like(k, {fe(k, -1), fe(k, 0), fe(k, 1)});
  auto reports = local_exponents(airy_like);
  REQUIRE(reports.size() == 1);  // no finite singular point
  CHECK_FALSE(reports[0].point.has_value());
  CHECK_FALSE(reports[0].regular);

  // y' = i/t y has the nonrational exponent i at the origin.
  DiffOp rot(k, {parse_element(k, "-i/t"), fe(k, 1)});
  auto rep2 = local_exponents(rot);
  bool found = false;
  for (const auto& r : rep2)
    if (r.point && r.point.value() == pv({0, 1})) {
      found = true;
      CHECK(r.nonrational_count == 1);
      CHECK(r.exponents.empty());
    }
  CHECK(found);
}

TEST_CASE("planted rational kernels are recovered exactly") {
  FieldPtr k = plain();
  Rng rng(506);
  int done = 0;
  for (int it = 0; done < 60; ++it) {
    REQUIRE(it < 300);
    FieldElement y1 = rng.nonzero_element(k, 2, 2);
    FieldElement y2 = rng.nonzero_element(k, 2, 2);
    if ((y1.derive() / y1) == (y2.derive() / y2)) continue;  // same line
    DiffOp l = lclm(DiffOp(k, {-(y1.derive() / y1), fe(k, 1)}),
                    DiffOp(k, {-(y2.derive() / y2), fe(k, 1)}));
    RationalSolutionSpace sols;
    try {
      sols = rational_solutions(l, 128);
    } catch (const bound_overflow&) {
      continue;  // outside the cap; covered by the dedicated overflow test
    }
    CHECK(sols.basis.size() == 2);
    for (const auto& y : sols.basis) CHECK(l.apply(y).is_zero());
    CHECK(sp4test::in_qi_span(y1, sols.basis));
    CHECK(sp4test::in_qi_span(y2, sols.basis));
    ++done;
  }
}

TEST_CASE("rational solutions agree with the brute-force ansatz oracle") {
  FieldPtr k = plain();
  Rng rng(507);
  int done = 0;
  for (int it = 0; done < 110; ++it) {
    REQUIRE(it < 500);
    DiffOp l = random_op(rng, k, 2, 3, true);
    RationalSolutionSpace sols;
    try {
      sols = rational_solutions(l, 64);
    } catch (const bound_overflow&) {
      continue;
    }
    sp4test::OracleSpace oracle = sp4test::oracle_rational_solutions(l, 8, 8);
    CHECK(sols.basis.size() == oracle.basis.size());
    for (const auto& y : oracle.basis) CHECK(l.apply(y).is_zero());
    for (const auto& y : sols.basis) {
      CHECK(l.apply(y).is_zero());
      // The solver's solutions stay inside the oracle ansatz, so equal
      // dimensions mean equal spaces.
      FieldElement scaled = y * FieldElement(k, RatFun(oracle.den));
      CHECK(scaled.base().is_polynomial());
      CHECK(scaled.base().num().deg() <= 8);
    }
    ++done;
  }
}

TEST_CASE("risch_solve finds planted first-order solutions") {
  FieldPtr k = plain();
  Rng rng(508);
  for (int it = 0; it < 60; ++it) {
    FieldElement y0 = rng.nonzero_element(k, 2, 2);
    FieldElement f = rng.element(k, 2, 2);
    FieldElement g = y0.derive() - f * y0;
    if (g.is_zero()) continue;  // homogeneous: zero is the accepted answer
    std::optional<FieldElement> y;
    try {
      y = risch_solve(f, g);
    } catch (const bound_overflow&) {
      continue;
    }
    REQUIRE(y.has_value());
    CHECK(y->derive() == f * *y + g);
  }
}

TEST_CASE("risch_solve agrees with the brute-force ansatz oracle") {
  FieldPtr k = plain();
  Rng rng(509);
  int done = 0;
  for (int it = 0; done < 110; ++it) {
    REQUIRE(it < 500);
    FieldElement f(k, rng.ratfun(2, 2));
    FieldElement g(k, rng.ratfun(2, 2));
    if (g.is_zero()) continue;
    std::optional<FieldElement> y;
    try {
      y = risch_solve(f, g);
    } catch (const bound_overflow&) {
      continue;
    }
    if (y) {
      CHECK(y->derive() == f * *y + g);
    } else {
      // The solver claims emptiness; the bounded oracle must agree.
      auto probe = sp4test::oracle_risch(f, g, 8, 8);
      CHECK_FALSE(probe.has_value());
    }
    ++done;
  }
}

TEST_CASE("integrate_in_field on planted primitives and known failures") {
  FieldPtr k = plain();
  Rng rng(510);
  for (int it = 0; it < 50; ++it) {
    FieldElement p = rng.element(k, 3, 3);
    std::optional<FieldElement> y;
    try {
      y = integrate_in_field(p.derive());
    } catch (const bound_overflow&) {
      continue;
    }
    REQUIRE(y.has_value());
    CHECK(y->derive() == p.derive());
  }
  CHECK_FALSE(integrate_in_field(parse_element(k, "1/t")).has_value());
  CHECK_FALSE(integrate_in_field(parse_element(k, "1/(t^2 - 1)")).has_value());
  auto y = integrate_in_field(parse_element(k, "1/t^2"));
  REQUIRE(y.has_value());
  CHECK(y->derive() == parse_element(k, "1/t^2"));
}

TEST_CASE("exp_membership distinguishes logarithmic derivatives") {
  FieldPtr k = plain();
  Rng rng(511);
  for (int it = 0; it < 40; ++it) {
    FieldElement u = rng.nonzero_element(k, 2, 2);
    std::optional<FieldElement> y;
    try {
      y = exp_membership(u.derive() / u);
    } catch (const bound_overflow&) {
      continue;
    }
    REQUIRE(y.has_value());
    CHECK(y->derive() == (u.derive() / u) * *y);
  }
  CHECK_FALSE(exp_membership(fe_var(k)).has_value());
  CHECK_FALSE(exp_membership(parse_element(k, "1/(2*t)")).has_value());
  CHECK(exp_membership(parse_element(k, "3/t")).has_value());
}

TEST_CASE("integrable_combinations spans exactly the achievable space") {
  FieldPtr k = plain();
  // f1 integrable, f2 purely logarithmic, f3 = 2 f2 + an integrable part:
  // achievable combinations are c2 + 2 c3 = 0.
  FieldElement f1 = parse_element(k, "3*t^2");
  FieldElement f2 = parse_element(k, "1/t");
  FieldElement f3 = parse_element(k, "2/t + 5*t");
  IntegrableCombinations ic = integrable_combinations({f1, f2, f3});
  REQUIRE(ic.coefficient_basis.size() == 2);
  for (size_t j = 0; j < ic.coefficient_basis.size(); ++j) {
    const auto& c = ic.coefficient_basis[j];
    CHECK(c[1] + c[2] * QI(2) == QI(0));
    FieldElement combo = f1 * fe(k, c[0]) + f2 * fe(k, c[1]) + f3 * fe(k, c[2]);
    CHECK(ic.primitives[j].derive() == combo);
  }
  // Purely non-integrable family.
  IntegrableCombinations none =
      integrable_combinations({f2, parse_element(k, "1/(t - 1)")});
  CHECK(none.coefficient_basis.empty());
  CHECK(none.op.order() == 3);
}

TEST_CASE("bound_overflow reports the cap honestly") {
  FieldPtr k = plain();
  // y' = 100 y / t has the polynomial solution t^100, far beyond a cap of 8.
  DiffOp l(k, {parse_element(k, "-100/t"), fe(k, 1)});
  CHECK_THROWS_AS(rational_solutions(l, 8), const bound_overflow&);
  RationalSolutionSpace sols = rational_solutions(l, 128);
  REQUIRE(sols.basis.size() == 1);
  CHECK(l.apply(sols.basis[0]).is_zero());
}

TEST_CASE("monic and conj_radical") {
  FieldPtr k = make_extension_field("t", pv({1, 0, 1}), false);
  DiffOp l(k, {fe_sqrt(k), fe(k, 2)});
  CHECK(l.monic().lc() == fe(k, 1));
  CHECK(l.monic().coeff(0) == fe_sqrt(k) / fe(k, 2));
  DiffOp lc = l.conj_radical();
  CHECK(lc.coeff(0) == -fe_sqrt(k));
  CHECK(lc.coeff(1) == fe(k, 2));
}
