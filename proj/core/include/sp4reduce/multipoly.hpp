// Sparse polynomials over Q(i) in the canonical coordinates q1, q2, p1, p2,
// used to hold Hamiltonians.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <array>
#include <map>
#include <string>

#include "sp4reduce/field.hpp"

namespace sp4reduce {

class MultiPoly {
 public:
  using Exponents = std::array<int, 4>;  // (q1, q2, p1, p2)

  MultiPoly() = default;
  explicit MultiPoly(const QI& c);
  static MultiPoly coordinate(int idx);  // 0..3 -> q1, q2, p1, p2

  bool is_zero() const { return terms_.empty(); }

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const QI& c) const;
  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

  MultiPoly partial(int idx) const;
  // Evaluate at four elements of a common field.
  FieldElement eval(const std::array<FieldElement, 4>& z) const;

  std::string str() const;
  const std::map<Exponents, QI>& terms() const { return terms_; }

 private:
  void set(const Exponents& e, const QI& c);
  std::map<Exponents, QI> terms_;
};

// Names of the canonical coordinates in index order.
extern const std::array<std::string, 4> kCoordinateNames;

}  // namespace sp4reduce
