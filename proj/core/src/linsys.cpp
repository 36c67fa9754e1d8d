// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/linsys.hpp"

#include <algorithm>
#include <sstream>

#include "sp4reduce/errors.hpp"

namespace sp4reduce {

MatrixOverField::MatrixOverField(FieldPtr k, int rows, int cols)
    : k_(std::move(k)), rows_(rows), cols_(cols) {
  if (!k_) throw internal_error("MatrixOverField: null field");
  if (rows_ < 0 || cols_ < 0)
    throw internal_error("MatrixOverField: negative shape");
  e_.assign(static_cast<size_t>(rows_) * static_cast<size_t>(cols_),
            fe(k_, 0));
}

MatrixOverField MatrixOverField::identity(const FieldPtr& k, int n) {
  MatrixOverField m(k, n, n);
  for (int j = 0; j < n; ++j) m.at(j, j) = fe(k, 1);
  return m;
}

FieldElement& MatrixOverField::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw internal_error("MatrixOverField::at(): index out of range");
  return e_[static_cast<size_t>(r) * static_cast<size_t>(cols_) +
            static_cast<size_t>(c)];
}

const FieldElement& MatrixOverField::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw internal_error("MatrixOverField::at(): index out of range");
  return e_[static_cast<size_t>(r) * static_cast<size_t>(cols_) +
            static_cast<size_t>(c)];
}

MatrixOverField MatrixOverField::operator-() const {
  MatrixOverField m = *this;
  for (auto& x : m.e_) x = -x;
  return m;
}

static void check_shape(const MatrixOverField& a, const MatrixOverField& b,
                        bool product) {
  if (product ? (a.cols() != b.rows())
              : (a.rows() != b.rows() || a.cols() != b.cols()))
    throw shape_mismatch("matrix shapes do not match");
}

MatrixOverField MatrixOverField::operator+(const MatrixOverField& o) const {
  check_shape(*this, o, false);
  MatrixOverField m = *this;
  for (size_t j = 0; j < e_.size(); ++j) m.e_[j] += o.e_[j];
  return m;
}

MatrixOverField MatrixOverField::operator-(const MatrixOverField& o) const {
  check_shape(*this, o, false);
  MatrixOverField m = *this;
  for (size_t j = 0; j < e_.size(); ++j) m.e_[j] -= o.e_[j];
  return m;
}

MatrixOverField MatrixOverField::operator*(const MatrixOverField& o) const {
  check_shape(*this, o, true);
  MatrixOverField m(k_, rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int j = 0; j < cols_; ++j) {
      const FieldElement& a = at(r, j);
      if (a.is_zero()) continue;
      for (int c = 0; c < o.cols_; ++c) {
        const FieldElement& b = o.at(j, c);
        if (!b.is_zero()) m.at(r, c) += a * b;
      }
    }
  return m;
}

MatrixOverField MatrixOverField::operator*(const FieldElement& s) const {
  MatrixOverField m = *this;
  for (auto& x : m.e_) x *= s;
  return m;
}

bool MatrixOverField::operator==(const MatrixOverField& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t j = 0; j < e_.size(); ++j)
    if (e_[j] != o.e_[j]) return false;
  return true;
}

bool MatrixOverField::is_zero() const {
  return std::all_of(e_.begin(), e_.end(),
                     [](const FieldElement& x) { return x.is_zero(); });
}

MatrixOverField MatrixOverField::transpose() const {
  MatrixOverField m(k_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
  return m;
}

MatrixOverField MatrixOverField::derive() const {
  MatrixOverField m = *this;
  for (auto& x : m.e_) x = x.derive();
  return m;
}

// Gaussian elimination shared by det and inverse. Reduces a working copy in
// place, tracking the determinant; aug (if nonnull) receives the same row
// operations.
static FieldElement eliminate(MatrixOverField& w, MatrixOverField* aug) {
  const FieldPtr& k = w.field();
  int n = w.rows();
  FieldElement d = fe(k, 1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    long best = 0;
    for (int r = col; r < n; ++r) {
      if (w.at(r, col).is_zero()) continue;
      long cx = w.at(r, col).complexity();
      if (pivot < 0 || cx < best) {
        pivot = r;
        best = cx;
      }
    }
    if (pivot < 0) return fe(k, 0);
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(w.at(pivot, c), w.at(col, c));
        if (aug) std::swap(aug->at(pivot, c), aug->at(col, c));
      }
      d = -d;
    }
    FieldElement pv = w.at(col, col);
    d *= pv;
    FieldElement inv = pv.inverse();
    for (int c = 0; c < n; ++c) {
      w.at(col, c) *= inv;
      if (aug) aug->at(col, c) *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      FieldElement f = w.at(r, col);
      if (f.is_zero()) continue;
      for (int c = 0; c < n; ++c) {
        w.at(r, c) -= f * w.at(col, c);
        if (aug) aug->at(r, c) -= f * aug->at(col, c);
      }
    }
  }
  return d;
}

FieldElement MatrixOverField::det() const {
  if (rows_ != cols_) throw shape_mismatch("det(): matrix is not square");
  MatrixOverField w = *this;
  return eliminate(w, nullptr);
}

MatrixOverField MatrixOverField::inverse() const {
  if (rows_ != cols_) throw shape_mismatch("inverse(): matrix is not square");
  MatrixOverField w = *this;
  MatrixOverField aug = identity(k_, rows_);
  FieldElement d = eliminate(w, &aug);
  if (d.is_zero()) throw domain_error("inverse(): singular matrix");
  return aug;
}

FieldElement MatrixOverField::trace() const {
  if (rows_ != cols_) throw shape_mismatch("trace(): matrix is not square");
  FieldElement t = fe(k_, 0);
  for (int j = 0; j < rows_; ++j) t += at(j, j);
  return t;
}

std::string MatrixOverField::str() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (int c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << at(r, c).str();
    }
  }
  os << "]";
  return os.str();
}

ConstMatrix::ConstMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows_ < 0 || cols_ < 0)
    throw internal_error("ConstMatrix: negative shape");
  e_.assign(static_cast<size_t>(rows_) * static_cast<size_t>(cols_), QI());
}

ConstMatrix ConstMatrix::identity(int n) {
  ConstMatrix m(n, n);
  for (int j = 0; j < n; ++j) m.at(j, j) = QI(1);
  return m;
}

ConstMatrix ConstMatrix::unit(int n, int r, int c) {
  ConstMatrix m(n, n);
  m.at(r, c) = QI(1);
  return m;
}

QI& ConstMatrix::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw internal_error("ConstMatrix::at(): index out of range");
  return e_[static_cast<size_t>(r) * static_cast<size_t>(cols_) +
            static_cast<size_t>(c)];
}

const QI& ConstMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw internal_error("ConstMatrix::at(): index out of range");
  return e_[static_cast<size_t>(r) * static_cast<size_t>(cols_) +
            static_cast<size_t>(c)];
}

ConstMatrix ConstMatrix::operator-() const {
  ConstMatrix m = *this;
  for (auto& x : m.e_) x = -x;
  return m;
}

static void check_shape(const ConstMatrix& a, const ConstMatrix& b,
                        bool product) {
  if (product ? (a.cols() != b.rows())
              : (a.rows() != b.rows() || a.cols() != b.cols()))
    throw shape_mismatch("matrix shapes do not match");
}

ConstMatrix ConstMatrix::operator+(const ConstMatrix& o) const {
  check_shape(*this, o, false);
  ConstMatrix m = *this;
  for (size_t j = 0; j < e_.size(); ++j) m.e_[j] += o.e_[j];
  return m;
}

ConstMatrix ConstMatrix::operator-(const ConstMatrix& o) const {
  check_shape(*this, o, false);
  ConstMatrix m = *this;
  for (size_t j = 0; j < e_.size(); ++j) m.e_[j] -= o.e_[j];
  return m;
}

ConstMatrix ConstMatrix::operator*(const ConstMatrix& o) const {
  check_shape(*this, o, true);
  ConstMatrix m(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int j = 0; j < cols_; ++j) {
      const QI& a = at(r, j);
      if (a.is_zero()) continue;
      for (int c = 0; c < o.cols_; ++c) m.at(r, c) += a * o.at(j, c);
    }
  return m;
}

ConstMatrix ConstMatrix::operator*(const QI& s) const {
  ConstMatrix m = *this;
  for (auto& x : m.e_) x *= s;
  return m;
}

bool ConstMatrix::operator==(const ConstMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

bool ConstMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(),
                     [](const QI& x) { return x.is_zero(); });
}

ConstMatrix ConstMatrix::transpose() const {
  ConstMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
  return m;
}

std::string ConstMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (int c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << at(r, c).str();
    }
  }
  os << "]";
  return os.str();
}

ConstMatrix bracket(const ConstMatrix& a, const ConstMatrix& b) {
  return a * b - b * a;
}

MatrixOverField embed(const FieldPtr& k, const ConstMatrix& c) {
  MatrixOverField m(k, c.rows(), c.cols());
  for (int r = 0; r < c.rows(); ++r)
    for (int j = 0; j < c.cols(); ++j) m.at(r, j) = fe(k, c.at(r, j));
  return m;
}

MatrixOverField gauge(const MatrixOverField& p, const MatrixOverField& a) {
  if (p.rows() != a.rows() || p.cols() != a.cols() || a.rows() != a.cols())
    throw shape_mismatch("gauge(): shapes do not match");
  return p.inverse() * (a * p - p.derive());
}

ConstMatrix symplectic_j_const() {
  ConstMatrix j(4, 4);
  j.at(0, 2) = QI(1);
  j.at(1, 3) = QI(1);
  j.at(2, 0) = QI(-1);
  j.at(3, 1) = QI(-1);
  return j;
}

MatrixOverField symplectic_j(const FieldPtr& k) {
  return embed(k, symplectic_j_const());
}

bool is_symplectic(const MatrixOverField& p) {
  if (p.rows() != p.cols()) return false;
  if (p.rows() != 4) throw shape_mismatch("is_symplectic(): expected 4 x 4");
  MatrixOverField j = symplectic_j(p.field());
  return p.transpose() * j * p == j;
}

bool is_hamiltonian(const MatrixOverField& a) {
  if (a.rows() != a.cols()) return false;
  if (a.rows() != 4) throw shape_mismatch("is_hamiltonian(): expected 4 x 4");
  MatrixOverField j = symplectic_j(a.field());
  return (a.transpose() * j + j * a).is_zero();
}

// omega(x, y) = tx J y for two column indices of a matrix.
static FieldElement omega_cols(const MatrixOverField& v, int x, int y) {
  const FieldPtr& k = v.field();
  FieldElement s = fe(k, 0);
  s += v.at(0, x) * v.at(2, y) - v.at(2, x) * v.at(0, y);
  s += v.at(1, x) * v.at(3, y) - v.at(3, x) * v.at(1, y);
  return s;
}

MatrixOverField symplectic_gram_schmidt(const MatrixOverField& v) {
  if (v.rows() != 4 || v.cols() != 4)
    throw shape_mismatch("symplectic_gram_schmidt(): expected 4 x 4");
  const FieldPtr& k = v.field();
  if (v.det().is_zero())
    throw degenerate_input(
        "symplectic_gram_schmidt(): columns are not a basis");
  // Work on a copy; columns are adjusted in place.
  MatrixOverField w = v;
  auto omega = [&](int x, int y) { return omega_cols(w, x, y); };
  // e1 = column 0; find a partner with omega(e1, .) nonzero.
  int partner = -1;
  for (int c = 1; c < 4; ++c)
    if (!omega(0, c).is_zero()) {
      partner = c;
      break;
    }
  if (partner < 0)
    throw degenerate_input(
        "symplectic_gram_schmidt(): first column is degenerate");
  // Normalize the partner to omega(e1, f1) = 1.
  FieldElement inv = omega(0, partner).inverse();
  for (int r = 0; r < 4; ++r) w.at(r, partner) *= inv;
  // Project the two remaining columns into the symplectic complement:
  // u -> u - omega(e1, u) f1 + omega(f1, u) e1.
  std::vector<int> rest;
  for (int c = 1; c < 4; ++c)
    if (c != partner) rest.push_back(c);
  for (int c : rest) {
    FieldElement a = omega(0, c);
    FieldElement b = omega(partner, c);
    for (int r = 0; r < 4; ++r)
      w.at(r, c) = w.at(r, c) - a * w.at(r, partner) + b * w.at(r, 0);
  }
  FieldElement g = omega(rest[0], rest[1]);
  if (g.is_zero())
    throw degenerate_input(
        "symplectic_gram_schmidt(): complement is degenerate");
  inv = g.inverse();
  for (int r = 0; r < 4; ++r) w.at(r, rest[1]) *= inv;
  // Assemble columns in the order e1, e2, f1, f2.
  MatrixOverField out(k, 4, 4);
  int order[4] = {0, rest[0], partner, rest[1]};
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) out.at(r, c) = w.at(r, order[c]);
  if (!is_symplectic(out))
    throw internal_error("symplectic_gram_schmidt(): result not symplectic");
  return out;
}

std::optional<std::vector<FieldElement>> matrix_in_span(
    const MatrixOverField& a, const std::vector<ConstMatrix>& basis) {
  const FieldPtr& k = a.field();
  size_t m = basis.size();
  std::vector<std::vector<FieldElement>> mat;
  std::vector<FieldElement> rhs;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) {
      std::vector<FieldElement> row;
      row.reserve(m);
      for (const auto& b : basis) {
        if (b.rows() != a.rows() || b.cols() != a.cols())
          throw shape_mismatch("matrix_in_span(): shapes do not match");
        row.push_back(fe(k, b.at(r, c)));
      }
      mat.push_back(std::move(row));
      rhs.push_back(a.at(r, c));
    }
  std::vector<FieldElement> x;
  if (!solve_linear_in_field(mat, rhs, x)) return std::nullopt;
  return x;
}

std::optional<std::vector<QI>> const_in_span(
    const ConstMatrix& c, const std::vector<ConstMatrix>& basis) {
  std::vector<std::vector<QI>> mat;
  std::vector<QI> rhs;
  for (int r = 0; r < c.rows(); ++r)
    for (int j = 0; j < c.cols(); ++j) {
      std::vector<QI> row;
      row.reserve(basis.size());
      for (const auto& b : basis) {
        if (b.rows() != c.rows() || b.cols() != c.cols())
          throw shape_mismatch("const_in_span(): shapes do not match");
        row.push_back(b.at(r, j));
      }
      mat.push_back(std::move(row));
      rhs.push_back(c.at(r, j));
    }
  std::vector<QI> x;
  if (!solve_linear(mat, rhs, x)) return std::nullopt;
  return x;
}

// Close a set of constant matrices under brackets. The input matrices need
// not be independent; the returned list is a Q(i)-independent basis.
static std::vector<ConstMatrix> bracket_closure(
    const std::vector<ConstMatrix>& gens) {
  std::vector<ConstMatrix> basis;
  auto add = [&](const ConstMatrix& m) {
    if (m.is_zero()) return false;
    if (basis.empty()) {
      basis.push_back(m);
      return true;
    }
    if (const_in_span(m, basis)) return false;
    basis.push_back(m);
    return true;
  };
  for (const auto& g : gens) add(g);
  size_t done = 0;
  while (done < basis.size()) {
    size_t upto = basis.size();
    for (size_t a = 0; a < upto; ++a)
      for (size_t b = std::max(a + 1, done); b < upto; ++b)
        add(bracket(basis[a], basis[b]));
    done = upto;
  }
  return basis;
}

static bool spans_same(const std::vector<ConstMatrix>& sub,
                       const std::vector<ConstMatrix>& full) {
  auto closed = bracket_closure(sub);
  if (closed.size() != full.size()) return false;
  for (const auto& m : full)
    if (!const_in_span(m, closed)) return false;
  return true;
}

LieAlgebraInfo associated_lie_algebra(const MatrixOverField& a) {
  LieAlgebraInfo info;
  // Greedy sift: walk the entries and keep a maximal Q(i)-independent
  // family of coefficients, then express every entry over that family to
  // obtain the directions.
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) {
      const FieldElement& x = a.at(r, c);
      if (x.is_zero()) continue;
      if (!express_in_span(x, info.coefficients))
        info.coefficients.push_back(x);
    }
  if (!info.coefficients.empty()) {
    info.directions.assign(info.coefficients.size(),
                           ConstMatrix(a.rows(), a.cols()));
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) {
        const FieldElement& x = a.at(r, c);
        if (x.is_zero()) continue;
        auto coords = express_in_span(x, info.coefficients);
        if (!coords)
          throw internal_error("associated_lie_algebra(): sift inconsistent");
        for (size_t j = 0; j < coords->size(); ++j)
          info.directions[j].at(r, c) = (*coords)[j];
      }
  }
  info.closure = bracket_closure(info.directions);
  info.dimension = static_cast<int>(info.closure.size());
  info.abelian = true;
  for (size_t x = 0; x < info.closure.size() && info.abelian; ++x)
    for (size_t y = x + 1; y < info.closure.size(); ++y)
      if (!bracket(info.closure[x], info.closure[y]).is_zero()) {
        info.abelian = false;
        break;
      }
  // Smallest generating subset of the closure basis, by subset size.
  int n = info.dimension;
  info.min_generators = n;
  if (n == 0) {
    info.min_generators = 0;
  } else {
    bool found = false;
    for (int size = 1; size <= n && !found; ++size) {
      std::vector<int> pick(static_cast<size_t>(size));
      // Iterate over all size-subsets of {0, ..., n-1}.
      for (int j = 0; j < size; ++j) pick[static_cast<size_t>(j)] = j;
      while (true) {
        std::vector<ConstMatrix> sub;
        for (int idx : pick) sub.push_back(info.closure[static_cast<size_t>(idx)]);
        if (spans_same(sub, info.closure)) {
          info.min_generators = size;
          found = true;
          break;
        }
        int j = size - 1;
        while (j >= 0 && pick[static_cast<size_t>(j)] == n - size + j) --j;
        if (j < 0) break;
        ++pick[static_cast<size_t>(j)];
        for (int l = j + 1; l < size; ++l)
          pick[static_cast<size_t>(l)] = pick[static_cast<size_t>(l - 1)] + 1;
      }
    }
  }
  info.maximally_reduced =
      static_cast<int>(info.directions.size()) == info.min_generators;
  return info;
}

}  // namespace sp4reduce
