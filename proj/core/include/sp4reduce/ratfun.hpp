// Rational functions over Q(i) in canonical form: numerator and denominator
// coprime, denominator monic, zero represented as 0/1.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <string>
#include <utility>

#include "sp4reduce/poly.hpp"

namespace sp4reduce {

class RatFun {
 public:
  RatFun() : num_(), den_(QI(1)) {}
  RatFun(const QI& c) : num_(c), den_(QI(1)) {}  // NOLINT: implicit by design
  RatFun(long n) : num_(QI(n)), den_(QI(1)) {}   // NOLINT: implicit by design
  RatFun(const Poly& p) : num_(p), den_(QI(1)) {}  // NOLINT: implicit
  RatFun(Poly num, Poly den);

  static RatFun variable() { return RatFun(Poly::variable()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  QI constant_value() const;  // requires is_constant()

  RatFun operator-() const;
  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }
  bool operator==(const RatFun& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  RatFun inverse() const;
  RatFun derivative() const;
  // Substitute t -> 1/u; the result is a rational function in u.
  RatFun substitute_inverse() const;
  // Crude size measure used for pivot selection.
  int complexity() const { return num_.deg() + den_.deg() + 2; }

  std::string str(const std::string& var) const;

 private:
  Poly num_, den_;
};

}  // namespace sp4reduce
