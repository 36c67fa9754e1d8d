// Formal fundamental matrices in the Wei-Norman style: entries are
// polynomials in primitive symbols whose derivatives are declared, so the
// identity d(U) = B U can be checked symbolically.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "sp4reduce/sp4.hpp"

namespace sp4reduce {

class SymbolTable;

// Sparse polynomial in the symbols of one table, with coefficients in K.
// The exponent of a unit symbol (like E = exp of an integral) may be
// negative.
class FormalExpr {
 public:
  FormalExpr() = default;
  explicit FormalExpr(FieldElement c);

  static FormalExpr symbol(const SymbolTable& tab, int id);
  // id^k; negative powers are reserved for unit symbols.
  static FormalExpr symbol_power(const SymbolTable& tab, int id, int k);

  bool is_zero() const { return terms_.empty(); }

  FormalExpr operator-() const;
  FormalExpr operator+(const FormalExpr& o) const;
  FormalExpr operator-(const FormalExpr& o) const;
  FormalExpr operator*(const FormalExpr& o) const;
  bool operator==(const FormalExpr& o) const;

  // Leibniz derivative, substituting each symbol's declared derivative.
  FormalExpr derive(const SymbolTable& tab) const;

  std::string str(const SymbolTable& tab) const;
  const std::map<std::vector<int>, FieldElement>& terms() const {
    return terms_;
  }

 private:
  void set(const std::vector<int>& e, const FieldElement& c);
  std::map<std::vector<int>, FieldElement> terms_;
};

// Primitive symbols with declared derivatives. A derivative may refer to
// any declared symbol, including the one being defined (the substitution in
// derive() is applied once, not recursively).
class SymbolTable {
 public:
  // A plain primitive: d(name) = derivative.
  int add(const std::string& name, FormalExpr derivative);
  // Convenience overload for a derivative that lies in K.
  int add(const std::string& name, const FieldElement& derivative);
  // A unit symbol u with d(u) = rate * u; negative exponents are allowed.
  int add_unit(const std::string& name, const FieldElement& rate);

  int size() const { return static_cast<int>(defs_.size()); }
  const std::string& name(int id) const;
  const FormalExpr& derivative(int id) const;
  bool is_unit(int id) const;
  // Coefficient field, captured from the declared derivatives.
  const FieldPtr& field() const { return field_; }

 private:
  struct Def {
    std::string name;
    FormalExpr derivative;
    bool unit = false;
  };
  std::vector<Def> defs_;
  FieldPtr field_;
};

struct FundamentalMatrix {
  SymbolTable symbols;
  std::vector<FormalExpr> entries;  // 4x4 row-major
  const FormalExpr& at(int r, int c) const;
};

// Fundamental matrix template for a matrix over the five directions with at
// most one of the ma and mm coefficients nonzero (the shapes produced by
// table_form and solve_abelian). Throws shape_mismatch otherwise.
FundamentalMatrix fundamental_matrix(const MatrixOverField& b);

// Check d(U) = B U symbolically.
bool verify_fundamental(const FundamentalMatrix& u, const MatrixOverField& b);

}  // namespace sp4reduce
