// Gaussian rationals Q(i): exact complex numbers re + im*i with arbitrary
// precision rational parts.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace sp4reduce {

class QI {
 public:
  QI() : re_(0), im_(0) {}
  QI(long n) : re_(n), im_(0) {}  // NOLINT: implicit by design
  QI(const mpq_class& re) : re_(re), im_(0) {}
  QI(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static QI i() { return QI(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_rational() const { return im_ == 0; }

  QI conj() const { return QI(re_, -im_); }
  // Field norm re^2 + im^2; zero iff the element is zero.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  QI operator-() const { return QI(-re_, -im_); }
  QI operator+(const QI& o) const { return QI(re_ + o.re_, im_ + o.im_); }
  QI operator-(const QI& o) const { return QI(re_ - o.re_, im_ - o.im_); }
  QI operator*(const QI& o) const {
    return QI(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
  }
  QI inverse() const;
  QI operator/(const QI& o) const { return *this * o.inverse(); }

  QI& operator+=(const QI& o) { return *this = *this + o; }
  QI& operator-=(const QI& o) { return *this = *this - o; }
  QI& operator*=(const QI& o) { return *this = *this * o; }
  QI& operator/=(const QI& o) { return *this = *this / o; }

  bool operator==(const QI& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const QI& o) const { return !(*this == o); }

  // Canonical text form, parseable by the expression grammar. Examples:
  // "0", "3/2", "i", "-2*i", "1+2*i", "1-i/2".
  std::string str() const;

 private:
  mpq_class re_, im_;
};

// Exact nullspace basis of an m x n matrix over Q(i) (row-major), via
// fraction-free Gaussian elimination. Each basis vector has n entries.
std::vector<std::vector<QI>> nullspace(const std::vector<std::vector<QI>>& m,
                                       int cols);

// Solve M x = rhs over Q(i). Returns true and writes one particular solution
// into x if the system is consistent.
bool solve_linear(const std::vector<std::vector<QI>>& m,
                  const std::vector<QI>& rhs, std::vector<QI>& x);

}  // namespace sp4reduce
