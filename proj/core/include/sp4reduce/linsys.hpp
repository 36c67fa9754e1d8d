// Matrices over K and over Q(i), gauge transformations, symplectic and
// Hamiltonian predicates, and the associated Lie algebra of a linear system.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sp4reduce/field.hpp"

namespace sp4reduce {

// Dense matrix with entries in K.
class MatrixOverField {
 public:
  MatrixOverField() = default;
  MatrixOverField(FieldPtr k, int rows, int cols);  // zero matrix
  static MatrixOverField identity(const FieldPtr& k, int n);

  const FieldPtr& field() const { return k_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  FieldElement& at(int r, int c);
  const FieldElement& at(int r, int c) const;

  MatrixOverField operator-() const;
  MatrixOverField operator+(const MatrixOverField& o) const;
  MatrixOverField operator-(const MatrixOverField& o) const;
  MatrixOverField operator*(const MatrixOverField& o) const;
  MatrixOverField operator*(const FieldElement& s) const;
  bool operator==(const MatrixOverField& o) const;
  bool operator!=(const MatrixOverField& o) const { return !(*this == o); }

  bool is_zero() const;
  MatrixOverField transpose() const;
  // Entrywise derivation.
  MatrixOverField derive() const;
  FieldElement det() const;  // square only
  MatrixOverField inverse() const;  // throws domain_error when singular
  FieldElement trace() const;

  std::string str() const;

 private:
  FieldPtr k_;
  int rows_ = 0, cols_ = 0;
  std::vector<FieldElement> e_;
};

// Constant matrix over Q(i), used for Lie-algebra directions.
class ConstMatrix {
 public:
  ConstMatrix() = default;
  ConstMatrix(int rows, int cols);  // zero matrix
  static ConstMatrix identity(int n);
  // n x n matrix with a single 1 at (r, c), zero-based.
  static ConstMatrix unit(int n, int r, int c);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  QI& at(int r, int c);
  const QI& at(int r, int c) const;

  ConstMatrix operator-() const;
  ConstMatrix operator+(const ConstMatrix& o) const;
  ConstMatrix operator-(const ConstMatrix& o) const;
  ConstMatrix operator*(const ConstMatrix& o) const;
  ConstMatrix operator*(const QI& s) const;
  bool operator==(const ConstMatrix& o) const;
  bool operator!=(const ConstMatrix& o) const { return !(*this == o); }

  bool is_zero() const;
  ConstMatrix transpose() const;
  std::string str() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<QI> e_;
};

// Commutator AB - BA.
ConstMatrix bracket(const ConstMatrix& a, const ConstMatrix& b);

// Lift a constant matrix into the field.
MatrixOverField embed(const FieldPtr& k, const ConstMatrix& c);

// Gauge transformation P[A] = P^{-1} (A P - d(P)); if Y solves d(Y) = A Y
// then P^{-1} Y solves the transformed system.
MatrixOverField gauge(const MatrixOverField& p, const MatrixOverField& a);

// The standard symplectic form on K^4 in coordinates (q1, q2, p1, p2).
MatrixOverField symplectic_j(const FieldPtr& k);
ConstMatrix symplectic_j_const();

// P symplectic: tP J P = J.
bool is_symplectic(const MatrixOverField& p);
// A infinitesimally symplectic (Hamiltonian): tA J + J A = 0.
bool is_hamiltonian(const MatrixOverField& a);

// Symplectic Gram-Schmidt: turn a basis given by the columns of v into a
// symplectic matrix (columns e1, e2, f1, f2 with omega(e_i, f_j) = delta_ij).
// Throws degenerate_input when the columns are not a basis.
MatrixOverField symplectic_gram_schmidt(const MatrixOverField& v);

// Express a as sum f_i * basis_i with f_i in K, or nullopt.
std::optional<std::vector<FieldElement>> matrix_in_span(
    const MatrixOverField& a, const std::vector<ConstMatrix>& basis);

// Express c in the Q(i)-span of the given constant matrices, or nullopt.
std::optional<std::vector<QI>> const_in_span(
    const ConstMatrix& c, const std::vector<ConstMatrix>& basis);

// The Lie algebra attached to a system matrix: write A = sum f_i B_i with
// Q(i)-independent coefficients f_i read off greedily from the entries, then
// close the directions B_i under brackets.
struct LieAlgebraInfo {
  std::vector<ConstMatrix> directions;       // the B_i
  std::vector<FieldElement> coefficients;    // the f_i
  std::vector<ConstMatrix> closure;          // basis of the generated algebra
  int dimension = 0;                         // dim of the closure
  int min_generators = 0;  // smallest generating subset of the closure basis
  bool abelian = false;
  // Kolchin-Kovacic test: the directions already generate minimally.
  bool maximally_reduced = false;
};
LieAlgebraInfo associated_lie_algebra(const MatrixOverField& a);

}  // namespace sp4reduce
