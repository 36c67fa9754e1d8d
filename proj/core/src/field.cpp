// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/field.hpp"

#include <algorithm>
#include <sstream>

namespace sp4reduce {

FieldPtr make_rational_field(const std::string& var) {
  auto d = std::make_shared<FieldDescriptor>();
  d->variable = var;
  return d;
}

FieldPtr make_extension_field(const std::string& var, const Poly& d_raw,
                              bool twisted) {
  if (d_raw.deg() < 1)
    throw unsupported_extension(
        "extension polynomial must be non-constant in " + var);
  SquarefreeSplit split = squarefree_part(d_raw);
  if (split.squarefree.deg() < 1)
    throw unsupported_extension(
        "extension polynomial is a perfect square up to a constant; "
        "use the plain field instead");
  auto d = std::make_shared<FieldDescriptor>();
  d->variable = var;
  d->extension = split.squarefree;
  d->sqrt_cofactor = split.cofactor;
  if (twisted) {
    d->weight_base = RatFun(0);
    d->weight_rad = RatFun(split.cofactor);
  }
  return d;
}

Poly extension_cofactor(const FieldPtr& k) {
  if (!k) throw internal_error("extension_cofactor(): null field");
  return k->sqrt_cofactor;
}

namespace {

bool same_descriptor(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (a.variable != b.variable) return false;
  if (a.extension.has_value() != b.extension.has_value()) return false;
  if (a.extension && *a.extension != *b.extension) return false;
  return a.weight_base == b.weight_base && a.weight_rad == b.weight_rad;
}

}  // namespace

FieldElement::FieldElement(FieldPtr k, RatFun base, RatFun rad)
    : k_(std::move(k)), base_(std::move(base)), rad_(std::move(rad)) {
  if (!rad_.is_zero() && (!k_ || !k_->has_extension()))
    throw domain_error("FieldElement: radical part without an extension");
}

void FieldElement::check_same_field(const FieldElement& o) const {
  if (!k_ || !o.k_) throw internal_error("FieldElement: uninitialized operand");
  if (k_ == o.k_) return;
  if (!same_descriptor(*k_, *o.k_))
    throw domain_error("FieldElement: operands from different fields");
}

FieldElement FieldElement::operator-() const {
  return FieldElement(k_, -base_, -rad_);
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_field(o);
  return FieldElement(k_, base_ + o.base_, rad_ + o.rad_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same_field(o);
  return FieldElement(k_, base_ - o.base_, rad_ - o.rad_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_field(o);
  if (rad_.is_zero() && o.rad_.is_zero())
    return FieldElement(k_, base_ * o.base_);
  RatFun s(k_->extension.value());
  return FieldElement(k_, base_ * o.base_ + rad_ * o.rad_ * s,
                      base_ * o.rad_ + rad_ * o.base_);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  return *this * o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const {
  check_same_field(o);
  return base_ == o.base_ && rad_ == o.rad_;
}

FieldElement FieldElement::inverse() const {
  if (!k_) throw internal_error("FieldElement: uninitialized operand");
  if (is_zero()) throw domain_error("FieldElement::inverse(): division by zero");
  if (rad_.is_zero()) return FieldElement(k_, base_.inverse());
  // 1/(a + b*sqrt(S)) = (a - b*sqrt(S)) / (a^2 - b^2*S). The denominator is
  // nonzero because a squarefree non-constant S is never a square in Q(i)(t).
  RatFun s(k_->extension.value());
  RatFun n = base_ * base_ - rad_ * rad_ * s;
  if (n.is_zero())
    throw internal_error("FieldElement::inverse(): extension not squarefree");
  RatFun ninv = n.inverse();
  return FieldElement(k_, base_ * ninv, -rad_ * ninv);
}

FieldElement FieldElement::conj() const {
  return FieldElement(k_, base_, -rad_);
}

FieldElement FieldElement::derive_plain() const {
  if (!k_) throw internal_error("FieldElement: uninitialized operand");
  if (rad_.is_zero()) return FieldElement(k_, base_.derivative());
  // (a + b*sqrt(S))' = a' + (b' + b*S'/(2S)) * sqrt(S).
  RatFun s(k_->extension.value());
  RatFun sprime(k_->extension->derivative());
  return FieldElement(k_, base_.derivative(),
                      rad_.derivative() + rad_ * sprime / (s * RatFun(2)));
}

FieldElement FieldElement::derive() const {
  if (!k_) throw internal_error("FieldElement: uninitialized operand");
  FieldElement d = derive_plain();
  if (k_->is_plain_weight()) return d;
  return FieldElement(k_, k_->weight_base, k_->weight_rad) * d;
}

std::string FieldElement::str() const {
  if (!k_) return "<uninitialized>";
  const std::string& var = k_->variable;
  if (rad_.is_zero()) return base_.str(var);
  std::ostringstream os;
  std::string radical = "sqrt(" + k_->extension->str(var) + ")";
  std::string rs = rad_.str(var);
  std::string rad_term;
  if (rs == "1")
    rad_term = radical;
  else if (rs == "-1")
    rad_term = "-" + radical;
  else if (rs.find_first_of("+- ") != std::string::npos &&
           !(rs[0] == '(' && rs.back() == ')'))
    rad_term = "(" + rs + ")*" + radical;
  else
    rad_term = rs + "*" + radical;
  if (base_.is_zero()) return rad_term;
  os << base_.str(var);
  if (rad_term[0] == '-')
    os << " - " << rad_term.substr(1);
  else
    os << " + " << rad_term;
  return os.str();
}

FieldElement fe(const FieldPtr& k, long n) {
  return FieldElement(k, RatFun(n));
}

FieldElement fe(const FieldPtr& k, const QI& c) {
  return FieldElement(k, RatFun(c));
}

FieldElement fe_var(const FieldPtr& k) {
  return FieldElement(k, RatFun::variable());
}

FieldElement fe_sqrt(const FieldPtr& k) {
  if (!k || !k->has_extension())
    throw domain_error("fe_sqrt(): field has no extension");
  return FieldElement(k, RatFun(0), RatFun(k->sqrt_cofactor));
}

FieldElement fe_weight(const FieldPtr& k) {
  if (!k) throw internal_error("fe_weight(): null field");
  return FieldElement(k, k->weight_base, k->weight_rad);
}

namespace {

// Partial-fraction numerators of a proper fraction n/d over the pairwise
// coprime factors of d. Returns pairs (numerator, denominator piece).
std::vector<std::pair<Poly, Poly>> split_denominator(
    const Poly& n, const std::vector<Poly>& pieces) {
  std::vector<std::pair<Poly, Poly>> out;
  Poly rest_num = n;
  Poly rest_den(QI(1));
  for (const Poly& p : pieces) rest_den *= p;
  for (const Poly& p : pieces) {
    Poly other = rest_den.divrem(p).first;
    // 1 = s*p + t*other, so rest_num/rest_den splits as
    // (rest_num*t mod p)/p + carried remainder over `other`.
    XgcdResult x = poly_xgcd(p, other);
    if (x.g.deg() != 0)
      throw internal_error("split_denominator(): factors not coprime");
    QI ginv = x.g.coeff(0).inverse();
    Poly num_p = (rest_num * x.t * ginv).divrem(p).second;
    out.emplace_back(num_p, p);
    // rest_num/rest_den - num_p/p has denominator `other`.
    rest_num = (rest_num - num_p * other).divrem(p).first;
    rest_den = other;
  }
  if (!rest_num.is_zero())
    throw internal_error("split_denominator(): nonzero remainder");
  return out;
}

}  // namespace

HermiteSplitResult hermite_split(const FieldElement& a) {
  const FieldPtr& k = a.field();
  if (!k) throw internal_error("hermite_split(): uninitialized element");
  if (!k->is_plain_weight() || a.has_radical_part())
    throw unsupported_field(
        "hermite_split(): requires a plain rational element with weight 1");

  // Polynomial part integrates directly.
  auto [quot, rem] = a.base().num().divrem(a.base().den());
  RatFun f(0);
  {
    std::vector<QI> anti(static_cast<size_t>(quot.deg() + 2), QI(0));
    for (int j = 0; j <= quot.deg(); ++j)
      anti[static_cast<size_t>(j) + 1] = quot.coeff(j) / QI(j + 1);
    f = RatFun(Poly(std::move(anti)));
  }
  RatFun g(0);

  if (!rem.is_zero()) {
    // d = lc * prod m_j^j; group the proper part by multiplicity.
    const Poly& d = a.base().den();
    std::vector<Poly> sqf = squarefree_decomposition(d);
    std::vector<Poly> pieces;
    std::vector<int> mult;
    for (size_t j = 0; j < sqf.size(); ++j) {
      if (sqf[j].deg() < 1) continue;
      Poly pw(QI(1));
      for (size_t c = 0; c <= j; ++c) pw *= sqf[j];
      pieces.push_back(pw);
      mult.push_back(static_cast<int>(j) + 1);
    }
    auto parts = split_denominator(rem * d.lc().inverse(), pieces);
    for (size_t idx = 0; idx < parts.size(); ++idx) {
      int m = mult[idx];
      Poly u = sqf[static_cast<size_t>(m) - 1];
      Poly n = parts[idx].first;
      // Reduce n/u^m to a simple fraction plus a derivative.
      while (m >= 2) {
        // Choose B with u | (n + (m-1)*B*u'), then
        // n/u^m = (B/u^{m-1})' + (quotient - B')/u^{m-1}.
        XgcdResult x = poly_xgcd(u.derivative() * QI(m - 1), u);
        if (x.g.deg() != 0)
          throw internal_error("hermite_split(): u not squarefree");
        Poly b = ((-n) * x.s * x.g.coeff(0).inverse()).divrem(u).second;
        Poly lifted = n + b * u.derivative() * QI(m - 1);
        auto [q2, r2] = lifted.divrem(u);
        if (!r2.is_zero())
          throw internal_error("hermite_split(): lift not divisible");
        Poly upow(QI(1));
        for (int c = 0; c < m - 1; ++c) upow *= u;
        f += RatFun(b, upow);
        n = q2 - b.derivative();
        --m;
      }
      if (!n.is_zero()) g += RatFun(n, u);
    }
  }

  // The invariant a = f' + g is checked by the caller's tests; keep the
  // pieces in the same field.
  return {FieldElement(k, f), FieldElement(k, g)};
}

std::optional<std::vector<QI>> express_in_span(
    const FieldElement& x, const std::vector<FieldElement>& basis) {
  // Bring everything over one polynomial denominator, then compare
  // coefficient vectors over Q(i).
  Poly den(QI(1));
  auto fold = [&den](const RatFun& r) {
    Poly g = poly_gcd(den, r.den());
    den = den.divrem(g).first * r.den();
  };
  fold(x.base());
  fold(x.rad());
  for (const auto& b : basis) {
    fold(b.base());
    fold(b.rad());
  }
  auto vec = [&den](const FieldElement& e, int& base_deg, int& rad_deg) {
    Poly pb = e.base().num() * den.divrem(e.base().den()).first;
    Poly pr = e.rad().num() * den.divrem(e.rad().den()).first;
    base_deg = pb.deg();
    rad_deg = pr.deg();
    return std::make_pair(pb, pr);
  };
  int max_base = -1, max_rad = -1;
  std::vector<std::pair<Poly, Poly>> cols;
  int bd, rd;
  auto xv = vec(x, bd, rd);
  max_base = std::max(max_base, bd);
  max_rad = std::max(max_rad, rd);
  for (const auto& b : basis) {
    cols.push_back(vec(b, bd, rd));
    max_base = std::max(max_base, bd);
    max_rad = std::max(max_rad, rd);
  }
  int rows = (max_base + 1) + (max_rad + 1);
  if (rows == 0) {
    // Everything is zero; x = 0 is the empty combination.
    return std::vector<QI>(basis.size(), QI(0));
  }
  std::vector<std::vector<QI>> m(static_cast<size_t>(rows),
                                 std::vector<QI>(basis.size(), QI(0)));
  std::vector<QI> rhs(static_cast<size_t>(rows), QI(0));
  for (int r = 0; r <= max_base; ++r) rhs[static_cast<size_t>(r)] = xv.first.coeff(r);
  for (int r = 0; r <= max_rad; ++r)
    rhs[static_cast<size_t>(max_base + 1 + r)] = xv.second.coeff(r);
  for (size_t c = 0; c < cols.size(); ++c) {
    for (int r = 0; r <= max_base; ++r)
      m[static_cast<size_t>(r)][c] = cols[c].first.coeff(r);
    for (int r = 0; r <= max_rad; ++r)
      m[static_cast<size_t>(max_base + 1 + r)][c] = cols[c].second.coeff(r);
  }
  std::vector<QI> sol;
  if (!solve_linear(m, rhs, sol)) return std::nullopt;
  return sol;
}

std::vector<std::vector<QI>> qi_relations(const std::vector<FieldElement>& v) {
  if (v.empty()) return {};
  // Same coefficient-matrix construction as express_in_span, but we compute
  // the nullspace of the columns.
  Poly den(QI(1));
  for (const auto& e : v) {
    for (const RatFun* r : {&e.base(), &e.rad()}) {
      Poly g = poly_gcd(den, r->den());
      den = den.divrem(g).first * r->den();
    }
  }
  int max_base = -1, max_rad = -1;
  std::vector<std::pair<Poly, Poly>> cols;
  for (const auto& e : v) {
    Poly pb = e.base().num() * den.divrem(e.base().den()).first;
    Poly pr = e.rad().num() * den.divrem(e.rad().den()).first;
    max_base = std::max(max_base, pb.deg());
    max_rad = std::max(max_rad, pr.deg());
    cols.emplace_back(std::move(pb), std::move(pr));
  }
  int rows = (max_base + 1) + (max_rad + 1);
  if (rows == 0) {
    // All elements are zero: every combination is a relation.
    std::vector<std::vector<QI>> all;
    for (size_t j = 0; j < v.size(); ++j) {
      std::vector<QI> unit(v.size(), QI(0));
      unit[j] = QI(1);
      all.push_back(std::move(unit));
    }
    return all;
  }
  std::vector<std::vector<QI>> m(static_cast<size_t>(rows),
                                 std::vector<QI>(v.size(), QI(0)));
  for (size_t c = 0; c < cols.size(); ++c) {
    for (int r = 0; r <= max_base; ++r)
      m[static_cast<size_t>(r)][c] = cols[c].first.coeff(r);
    for (int r = 0; r <= max_rad; ++r)
      m[static_cast<size_t>(max_base + 1 + r)][c] = cols[c].second.coeff(r);
  }
  return nullspace(m, static_cast<int>(v.size()));
}

std::vector<int> independent_subset(const std::vector<FieldElement>& v) {
  std::vector<int> chosen;
  std::vector<FieldElement> span;
  for (size_t j = 0; j < v.size(); ++j) {
    if (v[j].is_zero()) continue;
    if (express_in_span(v[j], span).has_value()) continue;
    chosen.push_back(static_cast<int>(j));
    span.push_back(v[j]);
  }
  return chosen;
}

FieldPtr plain_twin(const FieldPtr& k) {
  if (!k) throw internal_error("plain_twin(): null field");
  if (k->is_plain_weight()) return k;
  auto d = std::make_shared<FieldDescriptor>(*k);
  d->weight_base = RatFun(1);
  d->weight_rad = RatFun(0);
  return d;
}

FieldElement with_field(const FieldElement& e, const FieldPtr& k2) {
  if (!e.field() || !k2) throw internal_error("with_field(): null field");
  if (e.field()->variable != k2->variable ||
      e.field()->extension.has_value() != k2->extension.has_value() ||
      (e.field()->extension && *e.field()->extension != *k2->extension))
    throw domain_error("with_field(): incompatible field structure");
  return FieldElement(k2, e.base(), e.rad());
}

bool solve_linear_in_field(const std::vector<std::vector<FieldElement>>& m_in,
                           const std::vector<FieldElement>& rhs,
                           std::vector<FieldElement>& x) {
  if (m_in.size() != rhs.size())
    throw internal_error("solve_linear_in_field(): dimension mismatch");
  size_t rows = m_in.size();
  size_t cols = rows ? m_in[0].size() : 0;
  if (rows == 0) {
    x.clear();
    return true;
  }
  FieldPtr k;
  for (const auto& row : m_in)
    for (const auto& e : row)
      if (e.field()) k = e.field();
  for (const auto& e : rhs)
    if (e.field()) k = e.field();
  if (!k) throw internal_error("solve_linear_in_field(): no field handle");

  std::vector<std::vector<FieldElement>> aug(rows);
  for (size_t r = 0; r < rows; ++r) {
    aug[r] = m_in[r];
    aug[r].push_back(rhs[r]);
  }
  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    // Pick the structurally smallest nonzero pivot to keep entries compact.
    int sel = -1;
    int best = 0;
    for (size_t r = row; r < rows; ++r) {
      if (aug[r][col].is_zero()) continue;
      int score = aug[r][col].complexity();
      if (sel < 0 || score < best) {
        sel = static_cast<int>(r);
        best = score;
      }
    }
    if (sel < 0) continue;
    std::swap(aug[row], aug[static_cast<size_t>(sel)]);
    FieldElement inv = aug[row][col].inverse();
    for (size_t c = col; c <= cols; ++c) aug[row][c] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || aug[r][col].is_zero()) continue;
      FieldElement f = aug[r][col];
      for (size_t c = col; c <= cols; ++c) aug[r][c] -= f * aug[row][c];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  for (size_t r = row; r < rows; ++r)
    if (!aug[r][cols].is_zero()) return false;
  x.assign(cols, fe(k, 0));
  for (size_t r = 0; r < pivot_col.size(); ++r)
    x[static_cast<size_t>(pivot_col[r])] = aug[r][cols];
  return true;
}

}  // namespace sp4reduce
