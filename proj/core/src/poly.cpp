// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "sp4reduce/errors.hpp"

namespace sp4reduce {

Poly Poly::monomial(const QI& c, int k) {
  if (k < 0) throw domain_error("Poly::monomial(): negative exponent");
  std::vector<QI> v(static_cast<size_t>(k) + 1, QI(0));
  v[static_cast<size_t>(k)] = c;
  return Poly(std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<QI> out = c_;
  if (o.c_.size() > out.size()) out.resize(o.c_.size(), QI(0));
  for (size_t k = 0; k < o.c_.size(); ++k) out[k] += o.c_[k];
  return Poly(std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<QI> out = c_;
  if (o.c_.size() > out.size()) out.resize(o.c_.size(), QI(0));
  for (size_t k = 0; k < o.c_.size(); ++k) out[k] -= o.c_[k];
  return Poly(std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<QI> out(c_.size() + o.c_.size() - 1, QI(0));
  for (size_t a = 0; a < c_.size(); ++a) {
    if (c_[a].is_zero()) continue;
    for (size_t b = 0; b < o.c_.size(); ++b) out[a + b] += c_[a] * o.c_[b];
  }
  return Poly(std::move(out));
}

Poly Poly::operator*(const QI& k) const {
  std::vector<QI> out = c_;
  for (auto& c : out) c *= k;
  return Poly(std::move(out));
}

Poly Poly::operator-() const {
  std::vector<QI> out = c_;
  for (auto& c : out) c = -c;
  return Poly(std::move(out));
}

std::pair<Poly, Poly> Poly::divrem(const Poly& d) const {
  if (d.is_zero()) throw domain_error("Poly::divrem(): division by zero");
  Poly q, r = *this;
  QI inv = d.lc().inverse();
  while (!r.is_zero() && r.deg() >= d.deg()) {
    int k = r.deg() - d.deg();
    QI c = r.lc() * inv;
    Poly m = Poly::monomial(c, k);
    q += m;
    r -= m * d;
  }
  return {q, r};
}

Poly Poly::derivative() const {
  if (deg() <= 0) return Poly();
  std::vector<QI> out(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k)
    out[k - 1] = c_[k] * QI(static_cast<long>(k));
  return Poly(std::move(out));
}

QI Poly::eval(const QI& x) const {
  QI acc(0);
  for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

Poly Poly::shift(const QI& c) const {
  // Horner in (t + c).
  Poly acc;
  Poly lin = Poly::variable() + Poly(c);
  for (size_t k = c_.size(); k-- > 0;) acc = acc * lin + Poly(c_[k]);
  return acc;
}

Poly Poly::reverse() const {
  std::vector<QI> out(c_.rbegin(), c_.rend());
  return Poly(std::move(out));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * lc().inverse();
}

int Poly::valuation_at_zero() const {
  if (is_zero()) throw domain_error("Poly::valuation_at_zero(): zero");
  for (size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return static_cast<int>(k);
  throw internal_error("Poly::valuation_at_zero(): unreachable");
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = c_.size(); k-- > 0;) {
    const QI& c = c_[k];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    if (!first) {
      if (cs[0] == '-') {
        os << " - ";
        cs = cs.substr(1);
      } else {
        os << " + ";
      }
    }
    // Mixed real+imaginary coefficients need parentheses next to the
    // variable power.
    bool mixed = (c.re() != 0 && c.im() != 0);
    if (k == 0) {
      os << cs;
    } else {
      if (cs == "1") {
        // Coefficient 1: print the power alone.
      } else if (cs == "-1") {
        os << "-";
      } else if (mixed) {
        os << "(" << cs << ")*";
      } else {
        os << cs << "*";
      }
      os << var;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divrem(b).second;
    a = b;
    b = r;
  }
  return a.is_zero() ? a : a.monic();
}

XgcdResult poly_xgcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  Poly s0(QI(1)), s1;
  Poly t0, t1(QI(1));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divrem(r1);
    Poly s2 = s0 - q * s1;
    Poly t2 = t0 - q * t1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (r0.is_zero()) return {r0, s0, t0};
  QI inv = r0.lc().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

std::vector<Poly> squarefree_decomposition(const Poly& p) {
  // Yun's algorithm; part k collects the factors of multiplicity k.
  if (p.is_zero()) throw domain_error("squarefree_decomposition(): zero");
  std::vector<Poly> parts;
  if (p.deg() == 0) return parts;
  Poly f = p.monic();
  Poly fp = f.derivative();
  Poly a = poly_gcd(f, fp);
  Poly b = f.divrem(a).first;
  Poly c = fp.divrem(a).first;
  Poly d = c - b.derivative();
  while (b.deg() > 0) {
    Poly g = poly_gcd(b, d);
    parts.push_back(g.monic());
    b = b.divrem(g).first;
    c = d.divrem(g).first;
    d = c - b.derivative();
  }
  return parts;
}

SquarefreeSplit squarefree_part(const Poly& p) {
  if (p.is_zero()) throw domain_error("squarefree_part(): zero polynomial");
  std::vector<Poly> parts = squarefree_decomposition(p);
  Poly s(p.lc());
  Poly c(QI(1));
  // p = lc * prod parts[k-1]^k; even powers go into the cofactor C, the odd
  // remainder into the squarefree part S.
  for (size_t k = 1; k <= parts.size(); ++k) {
    const Poly& f = parts[k - 1];
    if (f.deg() <= 0) continue;
    for (size_t j = 0; j < k / 2; ++j) c *= f;
    if (k % 2 == 1) s *= f;
  }
  return {s, c};
}

namespace {

// Euclidean resultant: res(a, b) = lc(b)^(deg a - deg r) * (-1)^(deg a *
// deg b) * res(b, r) with r the remainder of a by b.
QI resultant_impl(Poly a, Poly b) {
  if (a.is_zero() || b.is_zero()) return QI(0);
  QI acc(1);
  while (true) {
    if (b.deg() == 0) {
      QI c = b.coeff(0);
      QI p(1);
      for (int k = 0; k < a.deg(); ++k) p *= c;
      return acc * p;
    }
    Poly r = a.divrem(b).second;
    if (r.is_zero()) return QI(0);
    QI lcb = b.lc();
    QI pw(1);
    for (int k = 0; k < a.deg() - r.deg(); ++k) pw *= lcb;
    QI sign = ((a.deg() * b.deg()) % 2 == 0) ? QI(1) : QI(-1);
    acc *= sign * pw;
    a = b;
    b = r;
  }
}

std::vector<mpz_class> divisors_of(const mpz_class& n_in, size_t limit) {
  mpz_class n = abs(n_in);
  if (n == 0) throw internal_error("divisors_of(): zero argument");
  std::vector<mpz_class> divs;
  mpz_class d = 1;
  while (d * d <= n) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d * d != n) divs.push_back(n / d);
      if (divs.size() > limit)
        throw bound_overflow("rational_roots(): too many divisor candidates");
    }
    ++d;
    if (d > 4000000)
      throw bound_overflow("rational_roots(): coefficient too large to factor");
  }
  return divs;
}

}  // namespace

QI resultant(const Poly& a, const Poly& b) { return resultant_impl(a, b); }

std::vector<std::pair<mpq_class, int>> rational_roots(const Poly& p_in) {
  if (p_in.is_zero()) throw domain_error("rational_roots(): zero polynomial");
  std::vector<std::pair<mpq_class, int>> roots;
  Poly p = p_in;

  // Factor out t^v first.
  if (!p.coeff(0).is_zero()) {
    // No root at zero.
  } else {
    int v = p.valuation_at_zero();
    roots.emplace_back(mpq_class(0), v);
    std::vector<QI> shifted;
    for (int k = v; k <= p.deg(); ++k) shifted.push_back(p.coeff(k));
    p = Poly(std::move(shifted));
  }
  if (p.deg() <= 0) return roots;

  // A rational root of p is a root of gcd(p, conj(p)), which has rational
  // coefficients, so the candidate enumeration below stays valid even for
  // Gaussian-rational input.
  bool has_imag = false;
  for (int k = 0; k <= p.deg(); ++k)
    if (p.coeff(k).im() != 0) {
      has_imag = true;
      break;
    }
  if (has_imag) {
    std::vector<QI> cc;
    for (int k = 0; k <= p.deg(); ++k) cc.push_back(p.coeff(k).conj());
    p = poly_gcd(p, Poly(std::move(cc)));
    if (p.deg() <= 0) return roots;
  }

  // Clear denominators and the content to primitive integer coefficients.
  mpz_class den_lcm = 1;
  for (int k = 0; k <= p.deg(); ++k) {
    mpq_class c = p.coeff(k).re();
    den_lcm = den_lcm / gcd(den_lcm, c.get_den()) * c.get_den();
  }
  std::vector<mpz_class> ic(static_cast<size_t>(p.deg()) + 1);
  for (int k = 0; k <= p.deg(); ++k) {
    mpq_class c = p.coeff(k).re() * den_lcm;
    ic[static_cast<size_t>(k)] = c.get_num();
  }
  mpz_class content = 0;
  for (const auto& c : ic) content = gcd(content, c);
  if (content > 1)
    for (auto& c : ic) c /= content;

  const size_t kDivisorLimit = 1u << 16;
  std::vector<mpz_class> p0 = divisors_of(ic.front(), kDivisorLimit);
  std::vector<mpz_class> pl = divisors_of(ic.back(), kDivisorLimit);
  if (p0.size() * pl.size() > kDivisorLimit)
    throw bound_overflow("rational_roots(): candidate set too large");

  std::map<mpq_class, int> found;
  for (const auto& a : p0) {
    for (const auto& b : pl) {
      for (int sign = -1; sign <= 1; sign += 2) {
        mpq_class cand(sign * a, b);
        cand.canonicalize();
        if (found.count(cand)) continue;
        if (!p.eval(QI(cand)).is_zero()) continue;
        // Multiplicity by repeated deflation.
        int mult = 0;
        Poly q = p;
        Poly lin = Poly::variable() - Poly(QI(cand));
        while (q.deg() >= 1) {
          auto [quot, rem] = q.divrem(lin);
          if (!rem.is_zero()) break;
          ++mult;
          q = quot;
        }
        found[cand] = mult;
      }
    }
  }
  for (const auto& [r, m] : found) roots.emplace_back(r, m);
  return roots;
}

int valuation(const Poly& p, const Poly& pi) {
  if (p.is_zero()) throw domain_error("valuation(): zero polynomial");
  if (pi.deg() < 1) throw domain_error("valuation(): constant modulus");
  int v = 0;
  Poly q = p;
  while (true) {
    auto [quot, rem] = q.divrem(pi);
    if (!rem.is_zero()) return v;
    ++v;
    q = quot;
    if (q.is_zero()) throw internal_error("valuation(): unreachable");
  }
}

}  // namespace sp4reduce
