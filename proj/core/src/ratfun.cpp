// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/ratfun.hpp"

#include <sstream>

#include "sp4reduce/errors.hpp"

namespace sp4reduce {

namespace {

// Reduce num/den to canonical form: coprime, monic denominator.
void normalize(Poly& num, Poly& den) {
  if (den.is_zero()) throw domain_error("RatFun: zero denominator");
  if (num.is_zero()) {
    den = Poly(QI(1));
    return;
  }
  Poly g = poly_gcd(num, den);
  if (g.deg() > 0) {
    num = num.divrem(g).first;
    den = den.divrem(g).first;
  }
  QI inv = den.lc().inverse();
  num = num * inv;
  den = den * inv;
}

}  // namespace

RatFun::RatFun(Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize(num_, den_);
}

QI RatFun::constant_value() const {
  if (!is_constant())
    throw domain_error("RatFun::constant_value(): non-constant");
  return num_.coeff(0) / den_.coeff(0);
}

RatFun RatFun::operator+(const RatFun& o) const {
  return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
  return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator*(const RatFun& o) const {
  return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
  if (o.is_zero()) throw domain_error("RatFun: division by zero");
  return RatFun(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw domain_error("RatFun::inverse(): division by zero");
  return RatFun(den_, num_);
}

RatFun RatFun::derivative() const {
  return RatFun(num_.derivative() * den_ - num_ * den_.derivative(),
                den_ * den_);
}

RatFun RatFun::substitute_inverse() const {
  // t -> 1/u: p(t) = u^{-deg p} * rev(p)(u), so the degree difference moves
  // a power of u to one side.
  int dn = num_.deg();
  int dd = den_.deg();
  Poly n = num_.reverse();
  Poly d = den_.reverse();
  if (dd >= dn)
    n = n * Poly::monomial(QI(1), dd - dn);
  else
    d = d * Poly::monomial(QI(1), dn - dd);
  return RatFun(std::move(n), std::move(d));
}

std::string RatFun::str(const std::string& var) const {
  if (den_.deg() == 0) return num_.str(var);
  std::ostringstream os;
  std::string ns = num_.str(var);
  if (ns.find_first_of("+- ") != std::string::npos)
    os << "(" << ns << ")";
  else
    os << ns;
  os << "/(" << den_.str(var) << ")";
  return os.str();
}

}  // namespace sp4reduce
