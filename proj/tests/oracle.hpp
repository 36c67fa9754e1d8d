// Brute-force bounded-ansatz oracles for the differential solvers: every
// candidate solution is a rational function with numerator degree and pole
// order below fixed caps, so existence inside the ansatz reduces to exact
// Q(i) linear algebra on monomial images. The oracles are deliberately
// independent of the solver code paths they cross-check.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <optional>
#include <vector>

#include "sp4reduce/diffop.hpp"
#include "sp4reduce/field.hpp"
#include "sp4reduce/poly.hpp"
#include "sp4reduce/qi.hpp"

namespace sp4test {

using namespace sp4reduce;

// t^j / den for j = 0..num_cap.
inline std::vector<FieldElement> ansatz_basis(const FieldPtr& k,
                                              const Poly& den, int num_cap) {
  std::vector<FieldElement> out;
  out.reserve(num_cap + 1);
  for (int j = 0; j <= num_cap; ++j)
    out.emplace_back(k, RatFun(Poly::monomial(QI(1), j), den));
  return out;
}

// Shared denominator for the candidate solutions of an operator: the
// squarefree part of the leading numerator and of every coefficient
// denominator, raised to the pole cap.
inline Poly ansatz_denominator(const DiffOp& l, int pole_cap) {
  Poly prod(std::vector<QI>{QI(1)});
  for (int j = 0; j <= l.order(); ++j) {
    const RatFun& c = l.coeff(j).base();
    if (j == l.order() && !c.num().is_constant()) prod = prod * c.num();
    if (!c.den().is_constant()) prod = prod * c.den();
  }
  Poly s = squarefree_part(prod).squarefree.monic();
  Poly den(std::vector<QI>{QI(1)});
  for (int e = 0; e < pole_cap; ++e) den = den * s;
  return den;
}

// Clear the product denominator of the family and stack one Q(i) row per
// polynomial coefficient: row[r][j] = coeff_r(v_j * common).
inline std::vector<std::vector<QI>> coefficient_rows(
    const std::vector<FieldElement>& v, const FieldElement& extra,
    std::vector<QI>* extra_col) {
  Poly common(std::vector<QI>{QI(1)});
  for (const auto& e : v) common = common * e.base().den();
  common = common * extra.base().den();
  std::vector<Poly> nums;
  int max_deg = -1;
  for (const auto& e : v) {
    Poly n = e.base().num() * common.divrem(e.base().den()).first;
    max_deg = std::max(max_deg, n.deg());
    nums.push_back(std::move(n));
  }
  Poly extra_num = extra.base().num() * common.divrem(extra.base().den()).first;
  max_deg = std::max(max_deg, extra_num.deg());
  std::vector<std::vector<QI>> rows;
  if (extra_col) extra_col->clear();
  for (int r = 0; r <= max_deg; ++r) {
    std::vector<QI> row;
    row.reserve(nums.size());
    for (const auto& n : nums) row.push_back(n.coeff(r));
    rows.push_back(std::move(row));
    if (extra_col) extra_col->push_back(extra_num.coeff(r));
  }
  if (rows.empty()) rows.emplace_back(v.size(), QI(0));
  return rows;
}

struct OracleSpace {
  Poly den;
  std::vector<FieldElement> basis;
};

// All solutions of L(y) = 0 with y = p / den, deg p <= num_cap.
inline OracleSpace oracle_rational_solutions(const DiffOp& l, int num_cap,
                                             int pole_cap) {
  const FieldPtr& k = l.field();
  OracleSpace out;
  out.den = ansatz_denominator(l, pole_cap);
  std::vector<FieldElement> cand = ansatz_basis(k, out.den, num_cap);
  std::vector<FieldElement> images;
  images.reserve(cand.size());
  for (const auto& b : cand) images.push_back(l.apply(b));
  auto rows = coefficient_rows(images, fe(k, 0), nullptr);
  for (const auto& c : nullspace(rows, static_cast<int>(cand.size()))) {
    FieldElement y = fe(k, 0);
    for (size_t j = 0; j < cand.size(); ++j) y += cand[j] * fe(k, c[j]);
    out.basis.push_back(y);
  }
  return out;
}

// One solution of d(y) = f y + g with y in the ansatz, or nullopt.
inline std::optional<FieldElement> oracle_risch(const FieldElement& f,
                                                const FieldElement& g,
                                                int num_cap, int pole_cap) {
  const FieldPtr& k = f.field();
  Poly prod = f.base().den() * g.base().den();
  Poly s = squarefree_part(prod).squarefree.monic();
  Poly den(std::vector<QI>{QI(1)});
  for (int e = 0; e < pole_cap; ++e) den = den * s;
  std::vector<FieldElement> cand = ansatz_basis(k, den, num_cap);
  std::vector<FieldElement> images;
  images.reserve(cand.size());
  for (const auto& b : cand) images.push_back(b.derive() - f * b);
  std::vector<QI> rhs_col;
  auto rows = coefficient_rows(images, g, &rhs_col);
  std::vector<QI> x;
  if (!solve_linear(rows, rhs_col, x)) return std::nullopt;
  FieldElement y = fe(k, 0);
  for (size_t j = 0; j < cand.size(); ++j) y += cand[j] * fe(k, x[j]);
  return y;
}

}  // namespace sp4test
