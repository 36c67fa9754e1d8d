// Ore polynomials in the field derivation, together with the solvers built
// on them: local exponent analysis, rational solutions, first-order
// inhomogeneous equations and limited integration.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sp4reduce/field.hpp"

namespace sp4reduce {

// L = c_n d^n + ... + c_1 d + c_0 with c_j in K and d the derivation of the
// coefficient field. Multiplication is composition, so d*c = c*d + d(c).
class DiffOp {
 public:
  DiffOp() = default;  // the zero operator with no field attached
  explicit DiffOp(FieldPtr k) : k_(std::move(k)) {}
  DiffOp(FieldPtr k, std::vector<FieldElement> coeffs);

  static DiffOp identity(const FieldPtr& k);
  static DiffOp derivation(const FieldPtr& k);
  static DiffOp scalar(const FieldElement& c);

  const FieldPtr& field() const { return k_; }
  // Order of the operator; -1 for the zero operator.
  int order() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  FieldElement coeff(int j) const;
  FieldElement lc() const;

  DiffOp operator-() const;
  DiffOp operator+(const DiffOp& o) const;
  DiffOp operator-(const DiffOp& o) const;
  // Composition: (L*M)(y) = L(M(y)).
  DiffOp operator*(const DiffOp& o) const;
  bool operator==(const DiffOp& o) const;
  bool operator!=(const DiffOp& o) const { return !(*this == o); }

  FieldElement apply(const FieldElement& y) const;
  DiffOp monic() const;
  // sqrt(S) -> -sqrt(S) on every coefficient.
  DiffOp conj_radical() const;

  std::string str() const;

 private:
  void trim();
  FieldPtr k_;
  std::vector<FieldElement> c_;
};

// Right division a = q*b + r with ord r < ord b.
std::pair<DiffOp, DiffOp> right_divide(const DiffOp& a, const DiffOp& b);

// Monic least common left multiple: the minimal-order L with L = u*a = v*b.
DiffOp lclm(const DiffOp& a, const DiffOp& b);

// Rewrite an operator over a field that differs only in its derivation
// weight, expanding d_src = (w_src/w_tgt) * d_tgt.
DiffOp rebase(const DiffOp& l, const FieldPtr& target);

// Local data of one singular point. Exponents are the verified rational
// roots of the indicial polynomial, repeated per multiplicity; roots that
// are not rational are only counted.
struct ExponentReport {
  std::optional<Poly> point;  // monic squarefree; disengaged at infinity
  std::vector<mpq_class> exponents;
  bool regular = false;  // indicial degree equals the operator order
  int indicial_degree = 0;
  int nonrational_count = 0;
};

// Exponent analysis at every finite singular point and at infinity, for the
// plain-basis form of the operator. Radical coefficients are symmetrized
// away first.
std::vector<ExponentReport> local_exponents(const DiffOp& l);

struct RationalSolutionSpace {
  std::vector<FieldElement> basis;
  std::vector<ExponentReport> exponents;
  int degree_cap = 0;  // cap that was in effect during the search
};

// Basis of the K-rational solutions of L(y) = 0. Pole and degree bounds come
// from exact indicial analysis; bound_overflow is raised when a bound
// exceeds the cap instead of silently truncating the search.
RationalSolutionSpace rational_solutions(const DiffOp& l, int degree_cap = 64);

// One y in K with d(y) = f*y + g, or nullopt. The zero solution is accepted
// only when g = 0.
std::optional<FieldElement> risch_solve(const FieldElement& f,
                                        const FieldElement& g);

// Nonzero y in K with d(y) = f*y, or nullopt.
std::optional<FieldElement> exp_membership(const FieldElement& f);

// One y in K with d(y) = f, or nullopt.
std::optional<FieldElement> integrate_in_field(const FieldElement& f);

// The achievable coefficient space {c in Q(i)^m : sum c_j f_j has a
// primitive in K}, with a matching primitive for each basis vector. The
// operator whose rational solutions were searched is kept, together with
// its exponent reports, so that a failed search can be documented.
struct IntegrableCombinations {
  std::vector<std::vector<QI>> coefficient_basis;
  std::vector<FieldElement> primitives;
  DiffOp op;
  std::vector<ExponentReport> exponents;
};
IntegrableCombinations integrable_combinations(
    const std::vector<FieldElement>& f, int degree_cap = 64);

}  // namespace sp4reduce
