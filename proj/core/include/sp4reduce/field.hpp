// The coefficient field K = Q(i)(t)[sqrt(D)] with derivation d = w * d/dt.
//
// D is a squarefree polynomial; elements are pairs a + b*sqrt(D) with a, b
// rational functions. The weight w is either 1 (plain derivation) or the
// canonicalized square root of a declared extension polynomial, which makes d
// the twisted derivation used for systems parametrized by an algebraic curve.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sp4reduce/errors.hpp"
#include "sp4reduce/ratfun.hpp"

namespace sp4reduce {

struct FieldDescriptor;
using FieldPtr = std::shared_ptr<const FieldDescriptor>;

struct FieldDescriptor {
  std::string variable = "t";
  // Squarefree extension polynomial S; disengaged for the plain field.
  std::optional<Poly> extension;
  // Cofactor of the declared raw extension: D_raw = S * C^2, sqrtD = C*sqrt(S).
  Poly sqrt_cofactor = Poly(QI(1));
  // Derivation weight w = weight_base + weight_rad * sqrt(S).
  RatFun weight_base = RatFun(1);
  RatFun weight_rad = RatFun(0);

  bool has_extension() const { return extension.has_value(); }
  bool is_plain_weight() const {
    return weight_rad.is_zero() && weight_base == RatFun(1);
  }
};

// Plain rational field Q(i)(var) with d/d var.
FieldPtr make_rational_field(const std::string& var = "t");

// Q(i)(var)[sqrt(D_raw)]. D_raw is canonicalized to its squarefree part S
// (D_raw = S*C^2); the token sqrtD then denotes C*sqrt(S). With
// twisted = true the derivation is sqrt(D_raw) * d/d var.
FieldPtr make_extension_field(const std::string& var, const Poly& d_raw,
                              bool twisted = false);

// The cofactor C of the declared extension polynomial (sqrtD = C*sqrt(S)).
// Returns 1 for non-extended fields.
Poly extension_cofactor(const FieldPtr& k);

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr k, RatFun base) : k_(std::move(k)), base_(std::move(base)) {}
  FieldElement(FieldPtr k, RatFun base, RatFun rad);

  const FieldPtr& field() const { return k_; }
  const RatFun& base() const { return base_; }
  const RatFun& rad() const { return rad_; }

  bool is_zero() const { return base_.is_zero() && rad_.is_zero(); }
  bool is_constant() const { return rad_.is_zero() && base_.is_constant(); }
  QI constant_value() const { return base_.constant_value(); }
  bool has_radical_part() const { return !rad_.is_zero(); }

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement inverse() const;
  // sqrt(D) -> -sqrt(D).
  FieldElement conj() const;
  // The field's derivation (twisted when the descriptor declares a weight).
  FieldElement derive() const;
  // Plain d/dt regardless of the declared weight.
  FieldElement derive_plain() const;
  // Crude size measure used for pivot selection.
  int complexity() const { return base_.complexity() + rad_.complexity(); }

  std::string str() const;

 private:
  void check_same_field(const FieldElement& o) const;
  FieldPtr k_;
  RatFun base_;
  RatFun rad_ = RatFun(0);
};

// Convenience constructors.
FieldElement fe(const FieldPtr& k, long n);
FieldElement fe(const FieldPtr& k, const QI& c);
FieldElement fe_var(const FieldPtr& k);
FieldElement fe_sqrt(const FieldPtr& k);  // the canonical radical C*sqrt(S)
// The derivation weight w as a field element.
FieldElement fe_weight(const FieldPtr& k);

// Hermite split of a = f' + g where g has only simple finite poles and no
// polynomial part (every polynomial integrates into f). Requires a plain
// field element (no radical part, weight 1); throws unsupported_field
// otherwise.
struct HermiteSplitResult {
  FieldElement f;
  FieldElement g;
};
HermiteSplitResult hermite_split(const FieldElement& a);

// Express x as a Q(i)-linear combination of the given elements; returns the
// coefficients or nullopt if x is not in their span. All elements must share
// one field.
std::optional<std::vector<QI>> express_in_span(
    const FieldElement& x, const std::vector<FieldElement>& basis);

// Basis of the Q(i)-relations {c : sum c_j v_j = 0} of the given family.
std::vector<std::vector<QI>> qi_relations(const std::vector<FieldElement>& v);

// Greedy sift: returns indices of a maximal Q(i)-linearly independent
// subfamily, scanned in order.
std::vector<int> independent_subset(const std::vector<FieldElement>& v);

// The same field with the plain derivation d/d var (weight 1). Returns k
// itself when its weight is already plain.
FieldPtr plain_twin(const FieldPtr& k);

// Transport an element to a field that differs only in its derivation
// weight. Throws domain_error when variable or extension disagree.
FieldElement with_field(const FieldElement& e, const FieldPtr& k2);

// Solve M x = rhs over K itself (entries are field elements). Returns true
// and one particular solution when the system is consistent.
bool solve_linear_in_field(const std::vector<std::vector<FieldElement>>& m,
                           const std::vector<FieldElement>& rhs,
                           std::vector<FieldElement>& x);

}  // namespace sp4reduce
