// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/multipoly.hpp"

#include <sstream>

#include "sp4reduce/errors.hpp"

namespace sp4reduce {

const std::array<std::string, 4> kCoordinateNames = {"q1", "q2", "p1", "p2"};

MultiPoly::MultiPoly(const QI& c) {
  if (!c.is_zero()) terms_[{0, 0, 0, 0}] = c;
}

MultiPoly MultiPoly::coordinate(int idx) {
  if (idx < 0 || idx > 3)
    throw internal_error("MultiPoly::coordinate(): index out of range");
  MultiPoly p;
  Exponents e{0, 0, 0, 0};
  e[static_cast<size_t>(idx)] = 1;
  p.terms_[e] = QI(1);
  return p;
}

void MultiPoly::set(const Exponents& e, const QI& c) {
  if (c.is_zero())
    terms_.erase(e);
  else
    terms_[e] = c;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) {
    auto it = r.terms_.find(e);
    QI sum = (it == r.terms_.end()) ? c : it->second + c;
    r.set(e, sum);
  }
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  return *this + (-o);
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
      auto it = r.terms_.find(e);
      QI sum = (it == r.terms_.end()) ? c1 * c2 : it->second + c1 * c2;
      r.set(e, sum);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(const QI& c) const {
  MultiPoly r;
  if (c.is_zero()) return r;
  for (const auto& [e, coeff] : terms_) r.terms_[e] = coeff * c;
  return r;
}

MultiPoly MultiPoly::partial(int idx) const {
  if (idx < 0 || idx > 3)
    throw internal_error("MultiPoly::partial(): index out of range");
  MultiPoly r;
  size_t u = static_cast<size_t>(idx);
  for (const auto& [e, c] : terms_) {
    if (e[u] == 0) continue;
    Exponents d = e;
    d[u] -= 1;
    r.set(d, c * QI(static_cast<long>(e[u])));
  }
  return r;
}

FieldElement MultiPoly::eval(const std::array<FieldElement, 4>& z) const {
  if (!z[0].field()) throw internal_error("MultiPoly::eval(): null field");
  FieldElement acc = fe(z[0].field(), 0);
  for (const auto& [e, c] : terms_) {
    FieldElement term = fe(z[0].field(), c);
    for (size_t u = 0; u < 4; ++u)
      for (int j = 0; j < e[u]; ++j) term *= z[u];
    acc += term;
  }
  return acc;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string cs = c.str();
    if (!first) {
      if (cs[0] == '-') {
        os << " - ";
        cs = cs.substr(1);
      } else {
        os << " + ";
      }
    }
    bool any_var = e[0] || e[1] || e[2] || e[3];
    bool mixed = (c.re() != 0 && c.im() != 0);
    if (!any_var) {
      os << cs;
    } else {
      if (cs == "1") {
        // Coefficient 1: print the monomial alone.
      } else if (cs == "-1") {
        os << "-";
      } else if (mixed) {
        os << "(" << cs << ")*";
      } else {
        os << cs << "*";
      }
      bool first_var = true;
      for (size_t u = 0; u < 4; ++u) {
        if (e[u] == 0) continue;
        if (!first_var) os << "*";
        os << kCoordinateNames[u];
        if (e[u] > 1) os << "^" << e[u];
        first_var = false;
      }
    }
    first = false;
  }
  return os.str();
}

}  // namespace sp4reduce
