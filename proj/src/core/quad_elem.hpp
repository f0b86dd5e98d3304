#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ergo {

/// Exact element a + b*sqrt(D) of a real quadratic field Q(sqrt(D)),
/// a, b rational, D a square-free positive integer. D == 1 degenerates to
/// the rationals (b folded into a on construction). All comparisons are
/// decided by exact integer arithmetic.
class QuadElem {
 public:
  QuadElem() : a_(0), b_(0), disc_(1) {}
  QuadElem(mpq_class a) : a_(std::move(a)), b_(0), disc_(1) {}  // NOLINT
  QuadElem(mpq_class a, mpq_class b, long disc);

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& radical_coeff() const { return b_; }
  long disc() const { return disc_; }

  bool is_rational() const { return b_ == 0; }

  QuadElem operator+(const QuadElem& o) const;
  QuadElem operator-(const QuadElem& o) const;
  QuadElem operator-() const { return QuadElem(-a_, -b_, disc_); }
  QuadElem operator*(const QuadElem& o) const;
  QuadElem inverse() const;
  QuadElem operator/(const QuadElem& o) const { return *this * o.inverse(); }

  QuadElem conj() const { return QuadElem(a_, -b_, disc_); }
  QuadElem abs() const { return sign() < 0 ? -*this : *this; }

  /// Exact sign: -1, 0, +1.
  int sign() const;

  bool operator==(const QuadElem& o) const { return (*this - o).sign() == 0; }
  bool operator!=(const QuadElem& o) const { return !(*this == o); }
  bool operator<(const QuadElem& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const QuadElem& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const QuadElem& o) const { return o < *this; }
  bool operator>=(const QuadElem& o) const { return o <= *this; }

  double to_double() const;
  std::string to_string() const;

  static QuadElem sqrt_of(long d);  // sqrt(d) for square-free d > 0

 private:
  long common_disc(const QuadElem& o) const;

  mpq_class a_, b_;
  long disc_;
};

/// Largest square-free divisor decomposition: n = s^2 * d with d square-free.
/// Returns {s, d}; requires n > 0.
struct SquarefreeSplit {
  mpz_class square_root;
  long squarefree;
};
SquarefreeSplit squarefree_split(const mpz_class& n);

}  // namespace ergo
