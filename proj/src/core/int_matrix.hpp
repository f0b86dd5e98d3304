#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace ergo {

/// Square integer matrix with arbitrary-precision entries and exact
/// determinant/adjugate/characteristic-polynomial computations.
class IntMatrix {
 public:
  explicit IntMatrix(int dim) : dim_(dim), e_(static_cast<size_t>(dim) * dim) {
    if (dim < 1) throw std::invalid_argument("IntMatrix: dim must be >= 1");
  }

  static IntMatrix identity(int dim) {
    IntMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows);

  int dim() const { return dim_; }

  mpz_class& at(int i, int j) { return e_[static_cast<size_t>(i) * dim_ + j]; }
  const mpz_class& at(int i, int j) const {
    return e_[static_cast<size_t>(i) * dim_ + j];
  }

  mpz_class det() const;
  mpz_class trace() const;
  IntMatrix transpose() const;

  /// Exact adjugate: A * adj(A) == det(A) * I.
  IntMatrix adjugate() const;

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const {
    return dim_ == o.dim_ && e_ == o.e_;
  }

  std::vector<mpz_class> apply(const std::vector<mpz_class>& v) const;

  /// Monic characteristic polynomial; coefficient of x^k at index k,
  /// coeffs[dim] == 1. Computed by Faddeev-LeVerrier (all divisions exact).
  std::vector<mpz_class> char_poly() const;

  std::string to_string() const;

 private:
  int dim_;
  std::vector<mpz_class> e_;
};

}  // namespace ergo
