// End-to-end driver: problem files, variational equations along a curve,
// and the full reduction pipeline with its report.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <array>
#include <optional>
#include <string>

#include "sp4reduce/multipoly.hpp"
#include "sp4reduce/weinorman.hpp"

namespace sp4reduce {

// A problem either gives a Hamiltonian with a particular solution curve, or
// a system matrix with one known solution vector.
struct ProblemSpec {
  std::string name;
  FieldPtr field;
  std::optional<MultiPoly> hamiltonian;
  std::optional<std::array<FieldElement, 4>> curve;
  std::optional<MatrixOverField> system;
  std::optional<std::array<FieldElement, 4>> solution;
  int degree_cap = 64;
};

// Problem-file format: "section { key = value ... }" blocks. Sections:
// field, hamiltonian, curve, system, solution, options. See the project
// README for the key inventory.
ProblemSpec parse_problem(const std::string& text);
ProblemSpec parse_problem_file(const std::string& path);

struct VariationalData {
  MatrixOverField a;                  // J * Hess(H) along the curve
  std::vector<FieldElement> zprime;   // the distinguished solution d(curve)
};

// Build the variational system of a Hamiltonian problem, or adopt the
// explicit system of a matrix problem. The solution property is verified;
// degenerate_input is thrown when a curve does not solve its Hamiltonian
// system or a solution vector fails d(v) = a v.
VariationalData build_variational(const ProblemSpec& spec);

struct PipelineResult {
  ProblemSpec spec;
  VariationalData variational;
  NormalizedSystem normalized;
  ClassificationResult classification;
  TableForm table;
  AbelianityCertificate certificate;
  std::optional<FundamentalMatrix> fundamental;
  bool fundamental_verified = false;
  std::optional<SimplifyResult> simplified;
  LieAlgebraInfo final_algebra;
  double elapsed_ms = 0.0;
};

PipelineResult run_pipeline(const ProblemSpec& spec);

}  // namespace sp4reduce
