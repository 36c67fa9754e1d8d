// Completion of a particular solution to a symplectic gauge and extraction
// of the 2x2 normal variational core.
//
// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/nve.hpp"

#include "sp4reduce/errors.hpp"

namespace sp4reduce {

namespace {

// Constant symplectic change of coordinates moving slot j of a vector into
// slot 0 (up to sign), used when the solution has a vanishing first entry.
// j = 1 swaps the two symplectic pairs, j = 2 uses J itself, j = 3 both.
ConstMatrix slot_rotation(int j) {
  ConstMatrix t = ConstMatrix::unit(4, 0, 1) + ConstMatrix::unit(4, 1, 0) +
                  ConstMatrix::unit(4, 2, 3) + ConstMatrix::unit(4, 3, 2);
  switch (j) {
    case 0:
      return ConstMatrix::identity(4);
    case 1:
      return t;
    case 2:
      return symplectic_j_const();
    default:
      return t * symplectic_j_const();
  }
}

}  // namespace

MatrixOverField completion_matrix(const std::vector<FieldElement>& v) {
  if (v.size() != 4) throw shape_mismatch("completion_matrix: need a vector of length 4");
  const FieldPtr& k = v[0].field();
  int j = 0;
  while (j < 4 && v[static_cast<size_t>(j)].is_zero()) ++j;
  if (j == 4) throw degenerate_input("completion_matrix: zero vector cannot be completed");

  MatrixOverField s = embed(k, slot_rotation(j));
  std::vector<FieldElement> w(4, fe(k, 0));
  MatrixOverField si = s.inverse();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) w[static_cast<size_t>(r)] = w[static_cast<size_t>(r)] + si.at(r, c) * v[static_cast<size_t>(c)];
  if (w[0].is_zero()) throw internal_error("completion_matrix: rotation failed to expose a unit");

  // Completion of w with w_1 invertible: symplectic with first column w.
  FieldElement inv = w[0].inverse();
  MatrixOverField q(k, 4, 4);
  q.at(0, 0) = w[0];
  q.at(1, 0) = w[1];
  q.at(2, 0) = w[2];
  q.at(3, 0) = w[3];
  q.at(1, 1) = fe(k, 1);
  q.at(2, 1) = w[3] * inv;
  q.at(2, 2) = inv;
  q.at(2, 3) = -(w[1] * inv);
  q.at(3, 3) = fe(k, 1);

  MatrixOverField p = s * q;
  if (!is_symplectic(p)) throw internal_error("completion_matrix: result is not symplectic");
  for (int r = 0; r < 4; ++r)
    if (p.at(r, 0) != v[static_cast<size_t>(r)]) throw internal_error("completion_matrix: first column mismatch");
  return p;
}

NormalizedSystem normalize_variational(const MatrixOverField& a,
                                       const std::vector<FieldElement>& v) {
  if (a.rows() != 4 || a.cols() != 4) throw shape_mismatch("normalize_variational: need a 4x4 system");
  if (v.size() != 4) throw shape_mismatch("normalize_variational: need a solution vector of length 4");
  if (!is_hamiltonian(a)) throw shape_mismatch("normalize_variational: matrix is not infinitesimally symplectic");

  for (int r = 0; r < 4; ++r) {
    FieldElement lhs = v[static_cast<size_t>(r)].derive();
    FieldElement rhs = fe(a.field(), 0);
    for (int c = 0; c < 4; ++c) rhs = rhs + a.at(r, c) * v[static_cast<size_t>(c)];
    if (lhs != rhs)
      throw degenerate_input("normalize_variational: vector does not solve the system");
  }

  NormalizedSystem out;
  out.p = completion_matrix(v);
  out.a_n = gauge(out.p, a);

  for (int r = 0; r < 4; ++r)
    if (!out.a_n.at(r, 0).is_zero())
      throw shape_mismatch("normalize_variational: gauged matrix keeps a nonzero first column");
  for (int c = 0; c < 4; ++c)
    if (!out.a_n.at(2, c).is_zero())
      throw shape_mismatch("normalize_variational: gauged matrix keeps a nonzero third row");

  out.n = MatrixOverField(a.field(), 2, 2);
  out.n.at(0, 0) = out.a_n.at(1, 1);
  out.n.at(0, 1) = out.a_n.at(1, 3);
  out.n.at(1, 0) = out.a_n.at(3, 1);
  out.n.at(1, 1) = out.a_n.at(3, 3);
  if (!out.n.trace().is_zero())
    throw internal_error("normalize_variational: normal core has nonzero trace");
  return out;
}

}  // namespace sp4reduce
