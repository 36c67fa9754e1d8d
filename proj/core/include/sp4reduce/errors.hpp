// Exception taxonomy shared by all modules.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <stdexcept>
#include <string>

namespace sp4reduce {

// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally invalid arithmetic: mixed field descriptors, division by zero,
// malformed descriptors.
class domain_error : public error {
 public:
  explicit domain_error(const std::string& msg) : error(msg) {}
};

// Text that does not conform to the expression or problem-file grammar.
class parse_error : public error {
 public:
  parse_error(const std::string& msg, int line, int column)
      : error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  explicit parse_error(const std::string& msg)
      : error(msg), line(0), column(0) {}
  int line;
  int column;
};

// A degree or divisor-enumeration bound exceeded the configured cap; raising
// the cap may make the computation feasible.
class bound_overflow : public error {
 public:
  explicit bound_overflow(const std::string& msg) : error(msg) {}
};

// Input data that is well formed but mathematically inadmissible, e.g. a
// curve that does not solve its Hamiltonian system, or a zero solution vector.
class degenerate_input : public error {
 public:
  explicit degenerate_input(const std::string& msg) : error(msg) {}
};

// A matrix that was expected to match one of the reduced-form patterns does
// not.
class shape_mismatch : public error {
 public:
  explicit shape_mismatch(const std::string& msg) : error(msg) {}
};

// An operation defined only for abelian Lie algebras received a non-abelian
// one.
class nonabelian_input : public error {
 public:
  explicit nonabelian_input(const std::string& msg) : error(msg) {}
};

// A classification step would need an algebraic extension beyond the declared
// quadratic one; reported honestly instead of guessed.
class unsupported_extension : public error {
 public:
  explicit unsupported_extension(const std::string& msg) : error(msg) {}
};

// An operation restricted to the plain rational field received an element of
// an extension or a twisted derivation.
class unsupported_field : public error {
 public:
  explicit unsupported_field(const std::string& msg) : error(msg) {}
};

// Violation of an internal invariant; indicates a bug, maps to exit code 2.
class internal_error : public error {
 public:
  explicit internal_error(const std::string& msg) : error(msg) {}
};

}  // namespace sp4reduce
