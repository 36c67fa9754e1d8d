// Dense univariate polynomials over Q(i).
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sp4reduce/qi.hpp"

namespace sp4reduce {

class Poly {
 public:
  Poly() = default;
  Poly(const QI& c) {  // NOLINT: implicit by design
    if (!c.is_zero()) c_.push_back(c);
  }
  Poly(long n) : Poly(QI(n)) {}  // NOLINT: implicit by design
  explicit Poly(std::vector<QI> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly variable() { return Poly(std::vector<QI>{QI(0), QI(1)}); }
  // t^k with coefficient c.
  static Poly monomial(const QI& c, int k);

  // Degree, with deg(0) = -1.
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  QI coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : QI(0);
  }
  QI lc() const { return c_.empty() ? QI(0) : c_.back(); }
  QI constant_term() const { return coeff(0); }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const QI& k) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<Poly, Poly> divrem(const Poly& d) const;
  Poly derivative() const;
  QI eval(const QI& x) const;
  // p(t) -> p(t + c).
  Poly shift(const QI& c) const;
  // p(t) -> t^deg(p) * p(1/t) (coefficient reversal).
  Poly reverse() const;
  Poly monic() const;
  // Exact power t^k dividing the polynomial.
  int valuation_at_zero() const;

  std::string str(const std::string& var) const;

  const std::vector<QI>& coeffs() const { return c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<QI> c_;
};

// Monic greatest common divisor.
Poly poly_gcd(Poly a, Poly b);

// Extended Euclid: g = s*a + t*b with g the monic gcd.
struct XgcdResult {
  Poly g, s, t;
};
XgcdResult poly_xgcd(const Poly& a, const Poly& b);

// Yun squarefree decomposition: p = lc * prod f_k^k with the f_k squarefree,
// monic and pairwise coprime. Returns the list (f_1, f_2, ...).
std::vector<Poly> squarefree_decomposition(const Poly& p);

// p = S * C^2 with S squarefree. S carries the leading coefficient; C is
// monic.
struct SquarefreeSplit {
  Poly squarefree;  // S
  Poly cofactor;    // C
};
SquarefreeSplit squarefree_part(const Poly& p);

// Resultant Res_t(a, b).
QI resultant(const Poly& a, const Poly& b);

// Rational roots (in Q, including half-integers etc.) of p together with
// multiplicities. Throws bound_overflow if the divisor enumeration of the
// outer coefficients is infeasible.
std::vector<std::pair<mpq_class, int>> rational_roots(const Poly& p);

// Multiplicity of pi in p (how many times the squarefree pi divides p).
int valuation(const Poly& p, const Poly& pi);

}  // namespace sp4reduce
