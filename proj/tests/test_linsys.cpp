// Unit tests for matrices over K, gauge transformations, the symplectic
// machinery and the associated Lie algebra. The gauge and symplectic
// properties run as randomized suites with fixed seeds; the sp(4) direction
// tables are checked entry for entry.
//
// This file is part of sp4reduce, released under the MIT license.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "sp4reduce/errors.hpp"
#include "sp4reduce/linsys.hpp"
#include "sp4reduce/parse.hpp"
#include "sp4reduce/sp4.hpp"

using namespace sp4reduce;
using sp4test::Rng;

namespace {

FieldPtr plain() { return make_rational_field("t"); }

FieldPtr twisted_hill() {
  return make_extension_field("t", sp4test::pv({2, 0, -1, 0, 0, 0, 4}), true);
}

}  // namespace

TEST_CASE("matrix arithmetic and inverse") {
  FieldPtr k = plain();
  Rng rng(601);
  for (int it = 0; it < 50; ++it) {
    MatrixOverField a = rng.matrix(k, 3);
    MatrixOverField b = rng.matrix(k, 3);
    MatrixOverField c = rng.matrix(k, 3);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    MatrixOverField p = rng.invertible(k, 3);
    CHECK(p * p.inverse() == MatrixOverField::identity(k, 3));
    CHECK(p.inverse() * p == MatrixOverField::identity(k, 3));
  }
  MatrixOverField singular(k, 2, 2);
  singular.at(0, 0) = fe(k, 1);
  CHECK_THROWS_AS(singular.inverse(), const domain_error&);
}

TEST_CASE("determinant is multiplicative and trace is invariant") {
  FieldPtr k = plain();
  Rng rng(602);
  for (int it = 0; it < 40; ++it) {
    MatrixOverField a = rng.matrix(k, 3);
    MatrixOverField b = rng.matrix(k, 3);
    CHECK((a * b).det() == a.det() * b.det());
    MatrixOverField p = rng.invertible(k, 3);
    CHECK(gauge(p, a).trace() + (p.inverse() * p.derive()).trace() ==
          a.trace());
  }
}

TEST_CASE("matrix derivation satisfies the Leibniz rule") {
  Rng rng(603);
  for (const auto& k : {plain(), twisted_hill()}) {
    for (int count = 0; count < 100; ++count) {
      MatrixOverField a = rng.matrix(k, 3, 1, 2);
      MatrixOverField b = rng.matrix(k, 3, 1, 2);
      CHECK((a * b).derive() == a.derive() * b + a * b.derive());
    }
  }
}

TEST_CASE("gauge composition rule over two hundred random systems") {
  Rng rng(604);
  int done = 0;
  for (const auto& k : {plain(), twisted_hill()}) {
    for (int count = 0; count < 100; ++count) {
      MatrixOverField p = rng.invertible(k, 2, 1, 2);
      MatrixOverField q = rng.invertible(k, 2, 1, 2);
      MatrixOverField a = rng.matrix(k, 2, 1, 2);
      // (PQ)[A] = Q[P[A]].
      CHECK(gauge(p * q, a) == gauge(q, gauge(p, a)));
      ++done;
    }
  }
  CHECK(done == 200);
}

TEST_CASE("gauge inverse round trip over two hundred random systems") {
  Rng rng(605);
  int done = 0;
  for (const auto& k : {plain(), twisted_hill()}) {
    for (int count = 0; count < 100; ++count) {
      MatrixOverField p = rng.invertible(k, 2, 1, 2);
      MatrixOverField a = rng.matrix(k, 2, 1, 2);
      CHECK(gauge(p.inverse(), gauge(p, a)) == a);
      ++done;
    }
  }
  CHECK(done == 200);
}

TEST_CASE("identity gauge and solution transport") {
  FieldPtr k = plain();
  Rng rng(606);
  MatrixOverField a = rng.matrix(k, 2);
  CHECK(gauge(MatrixOverField::identity(k, 2), a) == a);
  // If y solves d(y) = A y then P^-1 y solves the gauged system: check on a
  // constructed pair. Take A with known solution column (1, t).
  MatrixOverField sys(k, 2, 2);
  sys.at(1, 0) = fe(k, 1);  // y1' = 0, y2' = y1 has solution (1, t)
  MatrixOverField p = rng.invertible(k, 2);
  MatrixOverField b = gauge(p, sys);
  std::vector<FieldElement> y = {fe(k, 1), fe_var(k)};
  MatrixOverField pin = p.inverse();
  std::vector<FieldElement> z = {
      pin.at(0, 0) * y[0] + pin.at(0, 1) * y[1],
      pin.at(1, 0) * y[0] + pin.at(1, 1) * y[1]};
  CHECK(z[0].derive() == b.at(0, 0) * z[0] + b.at(0, 1) * z[1]);
  CHECK(z[1].derive() == b.at(1, 0) * z[0] + b.at(1, 1) * z[1]);
}

TEST_CASE("symplectic gauges preserve Hamiltonian systems") {
  Rng rng(607);
  int done = 0;
  for (const auto& k : {plain(), twisted_hill()}) {
    for (int count = 0; count < 100; ++count) {
      MatrixOverField p = rng.symplectic(k, 1, 1);
      REQUIRE(is_symplectic(p));
      MatrixOverField a = rng.hamiltonian(k, 1, 1);
      REQUIRE(is_hamiltonian(a));
      CHECK(is_hamiltonian(gauge(p, a)));
      ++done;
    }
  }
  CHECK(done == 200);
}

TEST_CASE("symplectic predicates reject near misses") {
  FieldPtr k = plain();
  MatrixOverField j = symplectic_j(k);
  CHECK(is_symplectic(j));
  CHECK_FALSE(is_symplectic(MatrixOverField::identity(k, 4) * fe(k, 2)));
  MatrixOverField a = MatrixOverField::identity(k, 4);
  CHECK_FALSE(is_hamiltonian(a));  // identity is not infinitesimally symplectic
  // J as a constant matrix matches the field version.
  ConstMatrix jc = symplectic_j_const();
  CHECK(embed(k, jc) == j);
}

TEST_CASE("symplectic Gram-Schmidt over two hundred random bases") {
  Rng rng(608);
  int done = 0;
  for (const auto& k : {plain(), twisted_hill()}) {
    for (int count = 0; count < 100; ++count) {
      MatrixOverField v = rng.invertible(k, 4, 0, 2);
      MatrixOverField e = symplectic_gram_schmidt(v);
      CHECK(is_symplectic(e));
      ++done;
    }
  }
  CHECK(done == 200);
  FieldPtr k = plain();
  MatrixOverField degenerate(k, 4, 4);
  CHECK_THROWS_AS(symplectic_gram_schmidt(degenerate),
                  const degenerate_input&);
}

TEST_CASE("sp(4) bracket table of the additive family") {
  const Sp4Basis& mb = sp4_basis();
  QI two(2);
  // [m1, m2] = 2 m3 and every other pair in (m1, m2, m3, ma) commutes or
  // closes as listed.
  CHECK(bracket(mb.m1, mb.m2) == mb.m3 * two);
  CHECK(bracket(mb.m2, mb.m1) == -(mb.m3 * two));
  CHECK(bracket(mb.m1, mb.m3).is_zero());
  CHECK(bracket(mb.m2, mb.m3).is_zero());
  CHECK(bracket(mb.ma, mb.m1) == -mb.m2);
  CHECK(bracket(mb.ma, mb.m2).is_zero());
  CHECK(bracket(mb.ma, mb.m3).is_zero());
}

TEST_CASE("sp(4) bracket table of the multiplicative family") {
  const Sp4Basis& mb = sp4_basis();
  CHECK(bracket(mb.mm, mb.m1) == -mb.m1);
  CHECK(bracket(mb.mm, mb.m2) == mb.m2);
  CHECK(bracket(mb.mm, mb.m3).is_zero());
}

TEST_CASE("sp(4) products of the unipotent directions") {
  const Sp4Basis& mb = sp4_basis();
  CHECK(mb.m1 * mb.m2 == mb.m3);
  CHECK(mb.m2 * mb.m1 == -mb.m3);
  CHECK((mb.m1 * mb.m1).is_zero());
  CHECK((mb.m2 * mb.m2).is_zero());
  CHECK((mb.m3 * mb.m3).is_zero());
  CHECK((mb.m1 * mb.m3).is_zero());
  CHECK((mb.m3 * mb.m1).is_zero());
  CHECK((mb.m2 * mb.m3).is_zero());
  CHECK((mb.m3 * mb.m2).is_zero());
}

TEST_CASE("all five directions are infinitesimally symplectic") {
  FieldPtr k = plain();
  const Sp4Basis& mb = sp4_basis();
  for (const ConstMatrix* m : {&mb.m1, &mb.m2, &mb.m3, &mb.ma, &mb.mm})
    CHECK(is_hamiltonian(embed(k, *m)));
}

TEST_CASE("bracket commutes with the embedding") {
  FieldPtr k = plain();
  Rng rng(609);
  const Sp4Basis& mb = sp4_basis();
  std::vector<ConstMatrix> dirs = {mb.m1, mb.m2, mb.m3, mb.ma, mb.mm};
  for (int it = 0; it < 30; ++it) {
    const ConstMatrix& a = dirs[static_cast<size_t>(rng.pick(0, 4))];
    const ConstMatrix& b = dirs[static_cast<size_t>(rng.pick(0, 4))];
    MatrixOverField ea = embed(k, a), eb = embed(k, b);
    CHECK(embed(k, bracket(a, b)) == ea * eb - eb * ea);
  }
}

TEST_CASE("matrix_in_span and const_in_span") {
  FieldPtr k = plain();
  const Sp4Basis& mb = sp4_basis();
  FieldElement f = parse_element(k, "1/t");
  FieldElement g = parse_element(k, "t^2");
  MatrixOverField a = embed(k, mb.m1) * f + embed(k, mb.m3) * g;
  auto coords = matrix_in_span(a, {mb.m1, mb.m3});
  REQUIRE(coords.has_value());
  CHECK((*coords)[0] == f);
  CHECK((*coords)[1] == g);
  CHECK_FALSE(matrix_in_span(a, {mb.m1, mb.m2}).has_value());

  ConstMatrix c = mb.m1 * QI(2) + mb.mm * QI::i();
  auto qc = const_in_span(c, {mb.m1, mb.mm});
  REQUIRE(qc.has_value());
  CHECK((*qc)[0] == QI(2));
  CHECK((*qc)[1] == QI::i());
  CHECK_FALSE(const_in_span(mb.ma, {mb.m1, mb.mm}).has_value());
}

TEST_CASE("associated Lie algebra of reduced and unreduced systems") {
  FieldPtr k = plain();
  const Sp4Basis& mb = sp4_basis();
  FieldElement f = parse_element(k, "1/t");
  FieldElement g = parse_element(k, "t");

  // One direction: abelian and maximally reduced.
  LieAlgebraInfo one = associated_lie_algebra(embed(k, mb.m1) * f);
  CHECK(one.dimension == 1);
  CHECK(one.abelian);
  CHECK(one.maximally_reduced);
  CHECK(one.min_generators == 1);

  // m1 and m2 with independent coefficients close to the Heisenberg span.
  MatrixOverField two = embed(k, mb.m1) * f + embed(k, mb.m2) * g;
  LieAlgebraInfo heis = associated_lie_algebra(two);
  CHECK(heis.dimension == 3);
  CHECK_FALSE(heis.abelian);
  CHECK(heis.directions.size() == 2);
  CHECK(heis.min_generators == 2);

  // Dependent coefficients collapse to a single direction.
  MatrixOverField dep = embed(k, mb.m1) * f + embed(k, mb.m2) * (f * fe(k, 2));
  LieAlgebraInfo line = associated_lie_algebra(dep);
  CHECK(line.dimension == 1);
  CHECK(line.abelian);

  // An abelian span that is not minimal: m3 next to m1 + m2 direction.
  MatrixOverField ab = embed(k, mb.m3) * f;
  LieAlgebraInfo central = associated_lie_algebra(ab);
  CHECK(central.dimension == 1);
  CHECK(central.abelian);

  // The zero system has the zero algebra.
  LieAlgebraInfo zero = associated_lie_algebra(MatrixOverField(k, 4, 4));
  CHECK(zero.dimension == 0);
  CHECK(zero.abelian);
  CHECK(zero.maximally_reduced);
}

TEST_CASE("closure under brackets is reported faithfully") {
  FieldPtr k = plain();
  const Sp4Basis& mb = sp4_basis();
  FieldElement f = parse_element(k, "1/t");
  FieldElement g = parse_element(k, "t");
  MatrixOverField two = embed(k, mb.m1) * f + embed(k, mb.m2) * g;
  LieAlgebraInfo info = associated_lie_algebra(two);
  // The closure contains the bracket of the two directions.
  ConstMatrix br = bracket(info.directions[0], info.directions[1]);
  CHECK(const_in_span(br, info.closure).has_value());
  for (const auto& d : info.directions)
    CHECK(const_in_span(d, info.closure).has_value());
}
