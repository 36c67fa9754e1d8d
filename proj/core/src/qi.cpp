// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/qi.hpp"

#include <sstream>

#include "sp4reduce/errors.hpp"

namespace sp4reduce {

QI QI::inverse() const {
  if (is_zero()) throw domain_error("QI::inverse(): division by zero");
  mpq_class n = norm();
  return QI(re_ / n, -im_ / n);
}

namespace {

std::string rational_str(const mpq_class& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

// The imaginary part as "i", "-i", "3*i", "i/2" or "3*i/2"; sign included.
std::string imag_str(const mpq_class& q) {
  std::string s;
  if (q.get_num() == 1)
    s = "i";
  else if (q.get_num() == -1)
    s = "-i";
  else
    s = rational_str(mpq_class(q.get_num())) + "*i";
  if (q.get_den() != 1) s += "/" + rational_str(mpq_class(q.get_den()));
  return s;
}

}  // namespace

std::string QI::str() const {
  if (is_zero()) return "0";
  if (im_ == 0) return rational_str(re_);
  if (re_ == 0) return imag_str(im_);
  std::string s = rational_str(re_);
  if (im_ > 0) s += "+";
  return s + imag_str(im_);
}

namespace {

// Row-reduce in place over Q(i); returns pivot column of each row.
std::vector<int> row_reduce(std::vector<std::vector<QI>>& m, int cols) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols && row < static_cast<int>(m.size()); ++col) {
    int sel = -1;
    for (int r = row; r < static_cast<int>(m.size()); ++r) {
      if (!m[r][col].is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(m[row], m[sel]);
    QI inv = m[row][col].inverse();
    for (int c = col; c < static_cast<int>(m[row].size()); ++c)
      m[row][c] *= inv;
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      QI factor = m[r][col];
      for (int c = col; c < static_cast<int>(m[r].size()); ++c)
        m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<QI>> nullspace(const std::vector<std::vector<QI>>& m_in,
                                       int cols) {
  std::vector<std::vector<QI>> m = m_in;
  std::vector<int> pivots = row_reduce(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;

  std::vector<std::vector<QI>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<QI> v(cols, QI(0));
    v[free] = QI(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve_linear(const std::vector<std::vector<QI>>& m_in,
                  const std::vector<QI>& rhs, std::vector<QI>& x) {
  if (m_in.size() != rhs.size())
    throw internal_error("solve_linear(): dimension mismatch");
  int cols = m_in.empty() ? 0 : static_cast<int>(m_in[0].size());
  std::vector<std::vector<QI>> aug = m_in;
  for (size_t r = 0; r < aug.size(); ++r) aug[r].push_back(rhs[r]);
  std::vector<int> pivots = row_reduce(aug, cols);
  // Inconsistent if a row is (0 ... 0 | nonzero).
  for (const auto& row : aug) {
    bool all_zero = true;
    for (int c = 0; c < cols; ++c)
      if (!row[c].is_zero()) {
        all_zero = false;
        break;
      }
    if (all_zero && !row[cols].is_zero()) return false;
  }
  x.assign(cols, QI(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return true;
}

}  // namespace sp4reduce
