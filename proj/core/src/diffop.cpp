// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/diffop.hpp"

#include <sstream>

namespace sp4reduce {

void DiffOp::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DiffOp::DiffOp(FieldPtr k, std::vector<FieldElement> coeffs)
    : k_(std::move(k)), c_(std::move(coeffs)) {
  if (!k_) throw internal_error("DiffOp: null field");
  trim();
}

DiffOp DiffOp::identity(const FieldPtr& k) { return DiffOp(k, {fe(k, 1)}); }

DiffOp DiffOp::derivation(const FieldPtr& k) {
  return DiffOp(k, {fe(k, 0), fe(k, 1)});
}

DiffOp DiffOp::scalar(const FieldElement& c) {
  if (!c.field()) throw internal_error("DiffOp::scalar(): no field");
  return DiffOp(c.field(), {c});
}

FieldElement DiffOp::coeff(int j) const {
  if (!k_) throw internal_error("DiffOp::coeff(): zero operator of no field");
  if (j < 0 || j >= static_cast<int>(c_.size())) return fe(k_, 0);
  return c_[static_cast<size_t>(j)];
}

FieldElement DiffOp::lc() const {
  if (c_.empty()) throw domain_error("DiffOp::lc(): zero operator");
  return c_.back();
}

DiffOp DiffOp::operator-() const {
  DiffOp r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

DiffOp DiffOp::operator+(const DiffOp& o) const {
  const FieldPtr& k = k_ ? k_ : o.k_;
  if (!k) throw internal_error("DiffOp: sum of two detached operators");
  std::vector<FieldElement> out(std::max(c_.size(), o.c_.size()), fe(k, 0));
  for (size_t j = 0; j < c_.size(); ++j) out[j] += c_[j];
  for (size_t j = 0; j < o.c_.size(); ++j) out[j] += o.c_[j];
  return DiffOp(k, std::move(out));
}

DiffOp DiffOp::operator-(const DiffOp& o) const { return *this + (-o); }

DiffOp DiffOp::operator*(const DiffOp& o) const {
  const FieldPtr& k = k_ ? k_ : o.k_;
  if (!k) throw internal_error("DiffOp: product of two detached operators");
  if (is_zero() || o.is_zero()) return DiffOp(k);
  // d^i applied after b d^j expands by Leibniz:
  //   d^i (b d^j) = sum_m binom(i, m) d^m(b) d^(i - m + j).
  int n = order();
  std::vector<FieldElement> out(
      static_cast<size_t>(n + o.order()) + 1, fe(k, 0));
  for (int j = 0; j <= o.order(); ++j) {
    // Successive derivatives of the right coefficient.
    std::vector<FieldElement> db{o.c_[static_cast<size_t>(j)]};
    for (int m = 1; m <= n; ++m) db.push_back(db.back().derive());
    for (int i = 0; i <= n; ++i) {
      const FieldElement& a = c_[static_cast<size_t>(i)];
      if (a.is_zero()) continue;
      mpz_class binom = 1;
      for (int m = 0; m <= i; ++m) {
        FieldElement term = a * db[static_cast<size_t>(m)];
        out[static_cast<size_t>(i - m + j)] +=
            term * fe(k, QI(mpq_class(binom)));
        binom = binom * (i - m) / (m + 1);
      }
    }
  }
  return DiffOp(k, std::move(out));
}

bool DiffOp::operator==(const DiffOp& o) const {
  if (order() != o.order()) return false;
  for (size_t j = 0; j < c_.size(); ++j)
    if (c_[j] != o.c_[j]) return false;
  return true;
}

FieldElement DiffOp::apply(const FieldElement& y) const {
  if (!k_) throw internal_error("DiffOp::apply(): detached operator");
  FieldElement acc = fe(k_, 0);
  FieldElement dy = y;
  for (size_t j = 0; j < c_.size(); ++j) {
    if (!c_[j].is_zero()) acc += c_[j] * dy;
    if (j + 1 < c_.size()) dy = dy.derive();
  }
  return acc;
}

DiffOp DiffOp::monic() const {
  if (is_zero()) return *this;
  FieldElement inv = lc().inverse();
  DiffOp r = *this;
  for (auto& c : r.c_) c *= inv;
  return r;
}

DiffOp DiffOp::conj_radical() const {
  DiffOp r = *this;
  for (auto& c : r.c_) c = c.conj();
  return r;
}

std::string DiffOp::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = order(); j >= 0; --j) {
    const FieldElement& c = c_[static_cast<size_t>(j)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    std::string cs = c.str();
    if (j == 0) {
      os << cs;
    } else {
      if (cs != "1") os << "(" << cs << ")*";
      os << "d";
      if (j > 1) os << "^" << j;
    }
    first = false;
  }
  return os.str();
}

std::pair<DiffOp, DiffOp> right_divide(const DiffOp& a, const DiffOp& b) {
  if (b.is_zero()) throw domain_error("right_divide(): division by zero");
  const FieldPtr& k = b.field();
  DiffOp q(k), r = a;
  FieldElement inv = b.lc().inverse();
  while (!r.is_zero() && r.order() >= b.order()) {
    int shift = r.order() - b.order();
    std::vector<FieldElement> mono(static_cast<size_t>(shift) + 1, fe(k, 0));
    mono.back() = r.lc() * inv;
    DiffOp term(k, std::move(mono));
    q = q + term;
    r = r - term * b;
  }
  return {q, r};
}

DiffOp lclm(const DiffOp& a, const DiffOp& b) {
  if (a.is_zero() || b.is_zero())
    throw domain_error("lclm(): zero operator");
  const FieldPtr& k = a.field();
  int na = a.order();
  int nb = b.order();
  if (na == 0 || nb == 0) {
    // A unit operator divides everything from the right.
    return (na == 0 ? b : a).monic();
  }
  DiffOp d = DiffOp::derivation(k);
  // Remainders of d^i modulo a and modulo b.
  std::vector<DiffOp> ra{DiffOp::identity(k)}, rb{DiffOp::identity(k)};
  auto vec_of = [&](int m) {
    // Coefficient vector of (ra[m], rb[m]) stacked.
    std::vector<FieldElement> v;
    for (int j = 0; j < na; ++j) v.push_back(ra[static_cast<size_t>(m)].coeff(j));
    for (int j = 0; j < nb; ++j) v.push_back(rb[static_cast<size_t>(m)].coeff(j));
    return v;
  };
  for (int m = 1; m <= na + nb; ++m) {
    ra.push_back(right_divide(d * ra.back(), a).second);
    rb.push_back(right_divide(d * rb.back(), b).second);
    // Look for d^m + sum_{i<m} c_i d^i killing both remainder columns.
    std::vector<std::vector<FieldElement>> mat(static_cast<size_t>(na + nb));
    for (auto& row : mat) row.assign(static_cast<size_t>(m), fe(k, 0));
    for (int i = 0; i < m; ++i) {
      auto col = vec_of(i);
      for (int r = 0; r < na + nb; ++r)
        mat[static_cast<size_t>(r)][static_cast<size_t>(i)] =
            col[static_cast<size_t>(r)];
    }
    auto rhs_vec = vec_of(m);
    std::vector<FieldElement> rhs;
    for (auto& e : rhs_vec) rhs.push_back(-e);
    std::vector<FieldElement> sol;
    if (!solve_linear_in_field(mat, rhs, sol)) continue;
    std::vector<FieldElement> coeffs = sol;
    coeffs.push_back(fe(k, 1));
    DiffOp l(k, std::move(coeffs));
    if (!right_divide(l, a).second.is_zero() ||
        !right_divide(l, b).second.is_zero())
      throw internal_error("lclm(): candidate fails the divisibility check");
    return l;
  }
  throw internal_error("lclm(): no common multiple up to the order bound");
}

DiffOp rebase(const DiffOp& l, const FieldPtr& target) {
  if (l.is_zero()) return DiffOp(target);
  const FieldPtr& src = l.field();
  FieldElement u = with_field(fe_weight(src), target) / fe_weight(target);
  DiffOp d_src = DiffOp::scalar(u) * DiffOp::derivation(target);
  DiffOp acc(target);
  DiffOp pw = DiffOp::identity(target);
  for (int j = 0; j <= l.order(); ++j) {
    FieldElement c = with_field(l.coeff(j), target);
    if (!c.is_zero()) acc = acc + DiffOp::scalar(c) * pw;
    if (j < l.order()) pw = d_src * pw;
  }
  return acc;
}

}  // namespace sp4reduce
