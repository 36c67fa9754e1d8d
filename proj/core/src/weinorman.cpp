// Formal fundamental matrices: sparse polynomials in primitive symbols with
// declared derivatives, the matrix templates for the reduced shapes, and the
// symbolic check of d(U) = B U.
//
// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/weinorman.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sp4reduce/errors.hpp"

namespace sp4reduce {

namespace {

// Exponent keys drop trailing zeros so the same monomial has one spelling.
std::vector<int> trim(std::vector<int> e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
  return e;
}

}  // namespace

FormalExpr::FormalExpr(FieldElement c) {
  if (!c.is_zero()) terms_[{}] = std::move(c);
}

void FormalExpr::set(const std::vector<int>& e, const FieldElement& c) {
  if (c.is_zero()) return;
  terms_[trim(e)] = c;
}

FormalExpr FormalExpr::symbol(const SymbolTable& tab, int id) {
  return symbol_power(tab, id, 1);
}

FormalExpr FormalExpr::symbol_power(const SymbolTable& tab, int id, int k) {
  if (id < 0 || id >= tab.size())
    throw domain_error("undeclared symbol id " + std::to_string(id));
  if (k < 0 && !tab.is_unit(id))
    throw domain_error("negative power of the non-unit symbol " +
                       tab.name(id));
  if (!tab.field())
    throw internal_error("symbol table carries no coefficient field");
  FormalExpr out;
  std::vector<int> e(static_cast<std::size_t>(id) + 1, 0);
  e[static_cast<std::size_t>(id)] = k;
  out.set(e, fe(tab.field(), 1));
  return out;
}

FormalExpr FormalExpr::operator-() const {
  FormalExpr out;
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

FormalExpr FormalExpr::operator+(const FormalExpr& o) const {
  FormalExpr out = *this;
  for (const auto& [e, c] : o.terms_) {
    auto it = out.terms_.find(e);
    if (it == out.terms_.end()) {
      out.terms_.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) out.terms_.erase(it);
    }
  }
  return out;
}

FormalExpr FormalExpr::operator-(const FormalExpr& o) const {
  return *this + (-o);
}

FormalExpr FormalExpr::operator*(const FormalExpr& o) const {
  FormalExpr out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      FieldElement c = c1 * c2;
      if (c.is_zero()) continue;
      std::vector<int> e(std::max(e1.size(), e2.size()), 0);
      for (std::size_t j = 0; j < e1.size(); ++j) e[j] += e1[j];
      for (std::size_t j = 0; j < e2.size(); ++j) e[j] += e2[j];
      e = trim(std::move(e));
      auto it = out.terms_.find(e);
      if (it == out.terms_.end()) {
        out.terms_.emplace(std::move(e), std::move(c));
      } else {
        it->second = it->second + c;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

bool FormalExpr::operator==(const FormalExpr& o) const {
  return terms_ == o.terms_;
}

FormalExpr FormalExpr::derive(const SymbolTable& tab) const {
  FormalExpr out;
  for (const auto& [e, c] : terms_) {
    FormalExpr dc;
    dc.set(e, c.derive());
    out = out + dc;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (static_cast<int>(j) >= tab.size())
        throw domain_error("expression uses a symbol the table lacks");
      std::vector<int> down = e;
      down[j] -= 1;
      FormalExpr part;
      part.set(down, c * fe(c.field(), e[j]));
      out = out + part * tab.derivative(static_cast<int>(j));
    }
  }
  return out;
}

std::string FormalExpr::str(const SymbolTable& tab) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")";
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      out += "*" + tab.name(static_cast<int>(j));
      if (e[j] != 1) out += "^" + std::to_string(e[j]);
    }
  }
  return out;
}

int SymbolTable::add(const std::string& name, FormalExpr derivative) {
  if (!field_) {
    for (const auto& [e, c] : derivative.terms()) {
      (void)e;
      if (c.field()) {
        field_ = c.field();
        break;
      }
    }
  }
  defs_.push_back(Def{name, std::move(derivative), false});
  return size() - 1;
}

int SymbolTable::add(const std::string& name, const FieldElement& derivative) {
  if (!field_ && derivative.field()) field_ = derivative.field();
  return add(name, FormalExpr(derivative));
}

int SymbolTable::add_unit(const std::string& name, const FieldElement& rate) {
  if (!field_ && rate.field()) field_ = rate.field();
  if (!field_) throw domain_error("unit symbol rate carries no field");
  int id = size();
  defs_.push_back(Def{name, FormalExpr(), true});
  defs_[static_cast<std::size_t>(id)].derivative =
      FormalExpr(rate) * FormalExpr::symbol(*this, id);
  return id;
}

const std::string& SymbolTable::name(int id) const {
  if (id < 0 || id >= size())
    throw domain_error("undeclared symbol id " + std::to_string(id));
  return defs_[static_cast<std::size_t>(id)].name;
}

const FormalExpr& SymbolTable::derivative(int id) const {
  if (id < 0 || id >= size())
    throw domain_error("undeclared symbol id " + std::to_string(id));
  return defs_[static_cast<std::size_t>(id)].derivative;
}

bool SymbolTable::is_unit(int id) const {
  if (id < 0 || id >= size())
    throw domain_error("undeclared symbol id " + std::to_string(id));
  return defs_[static_cast<std::size_t>(id)].unit;
}

const FormalExpr& FundamentalMatrix::at(int r, int c) const {
  if (entries.size() != 16)
    throw shape_mismatch("fundamental matrix must hold 16 entries");
  if (r < 0 || r >= 4 || c < 0 || c >= 4)
    throw shape_mismatch("fundamental matrix index out of range");
  return entries[static_cast<std::size_t>(r * 4 + c)];
}

FundamentalMatrix fundamental_matrix(const MatrixOverField& b) {
  if (b.rows() != 4 || b.cols() != 4)
    throw shape_mismatch("fundamental matrix templates expect a 4x4 system");
  const FieldPtr& k = b.field();
  const Sp4Basis& mb = sp4_basis();
  FieldElement a12 = b.at(0, 1);
  FieldElement a13 = b.at(0, 2);
  FieldElement a14 = b.at(0, 3);
  FieldElement a24 = b.at(1, 3);
  FieldElement a22 = b.at(1, 1);
  MatrixOverField rebuilt = embed(k, mb.m1) * a12 + embed(k, mb.m2) * a14 +
                            embed(k, mb.m3) * a13 + embed(k, mb.ma) * a24 +
                            embed(k, mb.mm) * a22;
  if (rebuilt != b)
    throw shape_mismatch("matrix does not lie in the five-direction span");
  if (!a24.is_zero() && !a22.is_zero())
    throw shape_mismatch("no template covers both ma and mm directions");

  FundamentalMatrix u;
  SymbolTable& tab = u.symbols;
  FormalExpr one(fe(k, 1));
  FormalExpr zero;
  auto sym = [&tab](int id) { return FormalExpr::symbol(tab, id); };

  if (!a22.is_zero()) {
    // Multiplicative core. With E = exp of the integral of a22, the
    // primitives Om1 = int a12 E and Om2 = int a14 / E close the system:
    // the Risch-type solutions are E Om2 and Om1 / E.
    int id_e = tab.add_unit("E", a22);
    int id_1 = tab.add("Om1", FormalExpr(a12) * sym(id_e));
    int id_2 = tab.add("Om2", FormalExpr(a14) *
                                  FormalExpr::symbol_power(tab, id_e, -1));
    int id_3 = tab.add(
        "Om3", FormalExpr(a13) + FormalExpr(a12) * sym(id_e) * sym(id_2) -
                   FormalExpr(a14) * sym(id_1) *
                       FormalExpr::symbol_power(tab, id_e, -1));
    FormalExpr e = sym(id_e);
    FormalExpr e_inv = FormalExpr::symbol_power(tab, id_e, -1);
    FormalExpr om1 = sym(id_1);
    FormalExpr om2 = sym(id_2);
    FormalExpr om3 = sym(id_3);
    u.entries = {one,  om1,  om3,          om2,  //
                 zero, e,    e * om2,      zero,  //
                 zero, zero, one,          zero,  //
                 zero, zero, -om1 * e_inv, e_inv};
    return u;
  }

  // Trivial or additive core; the trivial template is the L = 0 slice.
  int id_1 = tab.add("Om1", a12);
  FormalExpr om1 = sym(id_1);
  FormalExpr ell = zero;
  FormalExpr d_om2(a14);
  if (!a24.is_zero()) {
    int id_l = tab.add("L", a24);
    ell = sym(id_l);
    d_om2 = d_om2 - FormalExpr(a24) * om1;
  }
  int id_2 = tab.add("Om2", d_om2);
  FormalExpr om2 = sym(id_2);
  int id_3 = tab.add("Om3", FormalExpr(a13) + FormalExpr(a12) * om2 -
                                FormalExpr(a14) * om1);
  FormalExpr om3 = sym(id_3);
  u.entries = {one,  om1,  om3,  om2 + ell * om1,  //
               zero, one,  om2,  ell,              //
               zero, zero, one,  zero,             //
               zero, zero, -om1, one};
  return u;
}

bool verify_fundamental(const FundamentalMatrix& u, const MatrixOverField& b) {
  if (b.rows() != 4 || b.cols() != 4)
    throw shape_mismatch("fundamental matrix check expects a 4x4 system");
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      FormalExpr lhs = u.at(r, c).derive(u.symbols);
      FormalExpr rhs;
      for (int m = 0; m < 4; ++m) {
        rhs = rhs + FormalExpr(b.at(r, m)) * u.at(m, c);
      }
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

}  // namespace sp4reduce
