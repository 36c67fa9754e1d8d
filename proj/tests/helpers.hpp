// Shared helpers for the test binaries: deterministic random generators for
// exact objects and a few terse constructors.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sp4reduce/field.hpp"
#include "sp4reduce/linsys.hpp"
#include "sp4reduce/poly.hpp"
#include "sp4reduce/qi.hpp"
#include "sp4reduce/ratfun.hpp"

namespace sp4test {

using namespace sp4reduce;

inline mpq_class q(long num, long den = 1) {
  mpq_class x(num, den);
  x.canonicalize();
  return x;
}

inline Poly pv(std::vector<long> coeffs) {
  std::vector<QI> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(mpq_class(v));
  return Poly(std::move(c));
}

inline RatFun rf(std::vector<long> num, std::vector<long> den = {1}) {
  return RatFun(pv(std::move(num)), pv(std::move(den)));
}

// Deterministic generator; every test fixes its own seed so failures are
// reproducible by seed alone.
class Rng {
 public:
  explicit Rng(unsigned seed) : g_(seed) {}

  int pick(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g_);
  }

  mpq_class rat(int mag = 4) {
    mpq_class x(pick(-mag, mag), pick(1, mag));
    x.canonicalize();
    return x;
  }

  QI qi(int mag = 4, bool with_im = true) {
    return QI(rat(mag), with_im ? rat(mag) : mpq_class(0));
  }

  QI nonzero_qi(int mag = 4) {
    for (;;) {
      QI c = qi(mag);
      if (!c.is_zero()) return c;
    }
  }

  Poly poly(int deg, int mag = 3) {
    std::vector<QI> c;
    for (int j = 0; j <= deg; ++j) c.push_back(qi(mag));
    return Poly(std::move(c));
  }

  Poly nonzero_poly(int deg, int mag = 3) {
    for (;;) {
      Poly p = poly(deg, mag);
      if (!p.is_zero()) return p;
    }
  }

  RatFun ratfun(int deg = 2, int mag = 3) {
    return RatFun(poly(deg, mag), nonzero_poly(pick(0, deg), mag));
  }

  FieldElement element(const FieldPtr& k, int deg = 2, int mag = 3) {
    FieldElement base(k, ratfun(deg, mag));
    if (!k->has_extension() || pick(0, 1) == 0) return base;
    return base + FieldElement(k, RatFun(0), ratfun(deg, mag));
  }

  FieldElement nonzero_element(const FieldPtr& k, int deg = 2, int mag = 3) {
    for (;;) {
      FieldElement x = element(k, deg, mag);
      if (!x.is_zero()) return x;
    }
  }

  MatrixOverField matrix(const FieldPtr& k, int n, int deg = 1, int mag = 2) {
    MatrixOverField m(k, n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m.at(r, c) = element(k, deg, mag);
    return m;
  }

  MatrixOverField invertible(const FieldPtr& k, int n, int deg = 1,
                             int mag = 2) {
    for (;;) {
      MatrixOverField m = matrix(k, n, deg, mag);
      if (!m.det().is_zero()) return m;
    }
  }

  // Random Hamiltonian matrix J * S with S symmetric.
  MatrixOverField hamiltonian(const FieldPtr& k, int deg = 1, int mag = 2) {
    MatrixOverField s(k, 4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = r; c < 4; ++c) {
        FieldElement x = element(k, deg, mag);
        s.at(r, c) = x;
        s.at(c, r) = x;
      }
    return symplectic_j(k) * s;
  }

  // Random symplectic matrix as a short product of elementary symplectic
  // generators: J itself, unipotent blocks [[I, B], [0, I]] with B symmetric
  // and block diagonals [[P, 0], [0, tP^{-1}]].
  MatrixOverField symplectic(const FieldPtr& k, int deg = 1, int mag = 2) {
    MatrixOverField out = MatrixOverField::identity(k, 4);
    int factors = pick(1, 3);
    for (int f = 0; f < factors; ++f) {
      int kind = pick(0, 2);
      if (kind == 0) {
        out = out * symplectic_j(k);
      } else if (kind == 1) {
        MatrixOverField u = MatrixOverField::identity(k, 4);
        FieldElement b11 = element(k, deg, mag);
        FieldElement b12 = element(k, deg, mag);
        FieldElement b22 = element(k, deg, mag);
        u.at(0, 2) = b11;
        u.at(0, 3) = b12;
        u.at(1, 2) = b12;
        u.at(1, 3) = b22;
        out = out * u;
      } else {
        MatrixOverField p = invertible(k, 2, deg, mag);
        MatrixOverField q = p.inverse().transpose();
        MatrixOverField d(k, 4, 4);
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) {
            d.at(r, c) = p.at(r, c);
            d.at(r + 2, c + 2) = q.at(r, c);
          }
        out = out * d;
      }
    }
    return out;
  }

 private:
  std::mt19937 g_;
};

}  // namespace sp4test
