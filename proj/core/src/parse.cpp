// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/parse.hpp"

#include <cctype>
#include <string>

#include "sp4reduce/errors.hpp"

namespace sp4reduce {

namespace {

// Recursive-descent parser over an algebra adapter A, which supplies the
// value type and the semantic actions. The grammar is shared by field
// elements, extension polynomials and Hamiltonians.
template <typename A>
class Parser {
 public:
  using V = typename A::Value;

  Parser(const A& alg, const std::string& text) : alg_(alg), s_(text) {}

  V parse() {
    V v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (size_t j = 0; j < pos_ && j < s_.size(); ++j) {
      if (s_[j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error(msg, line, col);
  }

 private:
  V expr() {
    V v = term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v = alg_.add(v, term());
      } else if (peek() == '-') {
        ++pos_;
        v = alg_.sub(v, term());
      } else {
        break;
      }
    }
    return v;
  }

  V term() {
    V v = factor();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v = alg_.mul(*this, v, factor());
      } else if (peek() == '/') {
        ++pos_;
        v = alg_.div(*this, v, factor());
      } else {
        break;
      }
    }
    return v;
  }

  V factor() {
    skip_ws();
    bool neg = false;
    while (peek() == '-') {
      ++pos_;
      neg = !neg;
      skip_ws();
    }
    V v = base();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      bool eneg = false;
      if (peek() == '-') {
        ++pos_;
        eneg = true;
        skip_ws();
      }
      long e = exponent_token();
      v = alg_.pow(*this, v, eneg ? -e : e);
    }
    return neg ? alg_.neg(v) : v;
  }

  V base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      V v = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return alg_.integer(*this, integer_token());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return alg_.name(*this, name_token());
    fail("expected a number, a name or '('");
  }

  std::string integer_token() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  long exponent_token() {
    skip_ws();
    if (pos_ >= s_.size() ||
        !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected an integer exponent");
    std::string digits = integer_token();
    if (digits.size() > 4) fail("exponent out of range");
    return std::stol(digits);
  }

  std::string name_token() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
            s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  const A& alg_;
  const std::string& s_;
  size_t pos_ = 0;
};

// Generic integer power with the convention v^0 = 1.
template <typename P, typename V, typename One, typename Inv>
V generic_pow(P& parser, V v, long e, const One& one, const Inv& inv) {
  if (e == 0) return one();
  if (e < 0) {
    v = inv(v);
    e = -e;
  }
  V acc = one();
  while (e > 0) {
    if (e & 1) acc = acc * v;
    v = v * v;
    e >>= 1;
  }
  (void)parser;
  return acc;
}

struct ElementAlgebra {
  using Value = FieldElement;
  FieldPtr k;

  template <typename P>
  Value integer(P&, const std::string& digits) const {
    return fe(k, QI(mpq_class(digits)));
  }
  template <typename P>
  Value name(P& parser, const std::string& nm) const {
    if (nm == "i") return fe(k, QI::i());
    if (nm == k->variable) return fe_var(k);
    if (nm == "sqrtD") {
      if (!k->has_extension())
        parser.fail("sqrtD used but the field declares no extension");
      return fe_sqrt(k);
    }
    parser.fail("unknown name '" + nm + "'");
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  template <typename P>
  Value mul(P&, const Value& a, const Value& b) const {
    return a * b;
  }
  template <typename P>
  Value div(P& parser, const Value& a, const Value& b) const {
    if (b.is_zero()) parser.fail("division by zero");
    return a / b;
  }
  template <typename P>
  Value pow(P& parser, const Value& v, long e) const {
    if (e < 0 && v.is_zero()) parser.fail("zero raised to a negative power");
    return generic_pow(
        parser, v, e, [this] { return fe(k, 1); },
        [](const Value& x) { return x.inverse(); });
  }
};

struct PolyAlgebra {
  using Value = RatFun;
  std::string var;

  template <typename P>
  Value integer(P&, const std::string& digits) const {
    return RatFun(QI(mpq_class(digits)));
  }
  template <typename P>
  Value name(P& parser, const std::string& nm) const {
    if (nm == "i") return RatFun(QI::i());
    if (nm == var) return RatFun::variable();
    parser.fail("unknown name '" + nm + "'");
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  template <typename P>
  Value mul(P&, const Value& a, const Value& b) const {
    return a * b;
  }
  template <typename P>
  Value div(P& parser, const Value& a, const Value& b) const {
    if (b.is_zero()) parser.fail("division by zero");
    return a / b;
  }
  template <typename P>
  Value pow(P& parser, const Value& v, long e) const {
    if (e < 0 && v.is_zero()) parser.fail("zero raised to a negative power");
    return generic_pow(
        parser, v, e, [] { return RatFun(1); },
        [](const Value& x) { return x.inverse(); });
  }
};

struct MultiAlgebra {
  using Value = MultiPoly;

  static bool constant_of(const MultiPoly& p, QI& out) {
    if (p.is_zero()) {
      out = QI(0);
      return true;
    }
    if (p.terms().size() != 1) return false;
    const auto& [e, c] = *p.terms().begin();
    if (e != MultiPoly::Exponents{0, 0, 0, 0}) return false;
    out = c;
    return true;
  }

  template <typename P>
  Value integer(P&, const std::string& digits) const {
    return MultiPoly(QI(mpq_class(digits)));
  }
  template <typename P>
  Value name(P& parser, const std::string& nm) const {
    if (nm == "i") return MultiPoly(QI::i());
    for (int j = 0; j < 4; ++j)
      if (nm == kCoordinateNames[static_cast<size_t>(j)])
        return MultiPoly::coordinate(j);
    parser.fail("unknown name '" + nm + "'");
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  template <typename P>
  Value mul(P&, const Value& a, const Value& b) const {
    return a * b;
  }
  template <typename P>
  Value div(P& parser, const Value& a, const Value& b) const {
    QI c;
    if (!constant_of(b, c))
      parser.fail("division by a non-constant polynomial");
    if (c.is_zero()) parser.fail("division by zero");
    return a * c.inverse();
  }
  template <typename P>
  Value pow(P& parser, const Value& v, long e) const {
    if (e >= 0)
      return generic_pow(
          parser, v, e, [] { return MultiPoly(QI(1)); },
          [](const Value& x) { return x; });
    QI c;
    if (!constant_of(v, c) || c.is_zero())
      parser.fail("negative power of a non-constant polynomial");
    return generic_pow(
        parser, MultiPoly(c.inverse()), -e, [] { return MultiPoly(QI(1)); },
        [](const Value& x) { return x; });
  }
};

}  // namespace

FieldElement parse_element(const FieldPtr& k, const std::string& text) {
  if (!k) throw internal_error("parse_element(): null field");
  ElementAlgebra alg{k};
  return Parser<ElementAlgebra>(alg, text).parse();
}

Poly parse_poly(const std::string& var, const std::string& text) {
  PolyAlgebra alg{var};
  RatFun r = Parser<PolyAlgebra>(alg, text).parse();
  if (!r.is_polynomial())
    throw parse_error("expression is not a polynomial in " + var);
  // Canonical form has a monic denominator, so a constant denominator other
  // than 1 has already been folded into the numerator.
  return r.num();
}

MultiPoly parse_multipoly(const std::string& text) {
  MultiAlgebra alg;
  return Parser<MultiAlgebra>(alg, text).parse();
}

}  // namespace sp4reduce
