// Expression parsing. One grammar serves field elements, extension
// polynomials and Hamiltonian polynomials:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := ('-')* base ('^' ('-')? integer)?
//   base   := integer | 'i' | name | '(' expr ')'
//
// Whitespace is insignificant. Which names are legal depends on the caller:
// the field variable and sqrtD for field elements, q1 q2 p1 p2 for
// Hamiltonians.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <string>

#include "sp4reduce/field.hpp"
#include "sp4reduce/multipoly.hpp"

namespace sp4reduce {

// Parse an element of K. sqrtD is admitted only when the field declares an
// extension; it denotes the canonicalized radical C*sqrt(S).
FieldElement parse_element(const FieldPtr& k, const std::string& text);

// Parse a polynomial in the given variable (used for extension declarations).
// Division is allowed as long as the result is a polynomial.
Poly parse_poly(const std::string& var, const std::string& text);

// Parse a polynomial in q1, q2, p1, p2 over Q(i).
MultiPoly parse_multipoly(const std::string& text);

}  // namespace sp4reduce
