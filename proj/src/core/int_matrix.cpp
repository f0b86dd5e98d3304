#include "core/int_matrix.hpp"

#include <sstream>

namespace ergo {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows) {
  const int d = static_cast<int>(rows.size());
  IntMatrix m(d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(rows[i].size()) != d)
      throw std::invalid_argument("IntMatrix: matrix must be square");
    for (int j = 0; j < d; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

mpz_class IntMatrix::trace() const {
  mpz_class t = 0;
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix m(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m.at(j, i) = at(i, j);
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("IntMatrix: dim mismatch");
  IntMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const mpz_class& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < dim_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

std::vector<mpz_class> IntMatrix::apply(const std::vector<mpz_class>& v) const {
  if (static_cast<int>(v.size()) != dim_)
    throw std::invalid_argument("IntMatrix: vector dim mismatch");
  std::vector<mpz_class> r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

std::vector<mpz_class> IntMatrix::char_poly() const {
  // Faddeev-LeVerrier: M_1 = A, c_{d-1} = -tr(M_1),
  // M_{k+1} = A (M_k + c_{d-k} I), c_{d-k-1} = -tr(M_{k+1}) / (k+1).
  const int d = dim_;
  std::vector<mpz_class> c(static_cast<size_t>(d) + 1);
  c[d] = 1;
  IntMatrix M = *this;
  for (int k = 1; k <= d; ++k) {
    mpz_class t = M.trace();
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(),
                mpz_class(k).get_mpz_t());
    if (r != 0) throw std::logic_error("char_poly: non-exact division");
    c[d - k] = -q;
    if (k < d) {
      IntMatrix N = M;
      for (int i = 0; i < d; ++i) N.at(i, i) += c[d - k];
      M = (*this) * N;
    }
  }
  return c;
}

mpz_class IntMatrix::det() const {
  std::vector<mpz_class> c = char_poly();
  // det(A) = (-1)^d * p(0)
  return (dim_ % 2 == 0) ? c[0] : mpz_class(-c[0]);
}

IntMatrix IntMatrix::adjugate() const {
  if (dim_ == 1) {
    IntMatrix r(1);
    r.at(0, 0) = 1;
    return r;
  }
  // adj(A) = (-1)^{d-1} (A^{d-1} + c_{d-1} A^{d-2} + ... + c_1 I)
  // with c_k the characteristic-polynomial coefficients.
  std::vector<mpz_class> c = char_poly();
  IntMatrix acc(dim_);
  for (int i = 0; i < dim_; ++i) acc.at(i, i) = c[1];
  IntMatrix power = *this;
  for (int k = 2; k <= dim_ - 1; ++k) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) acc.at(i, j) += c[k] * power.at(i, j);
    power = power * (*this);
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) acc.at(i, j) += power.at(i, j);
  if (dim_ % 2 == 0)
    for (auto& x : acc.e_) x = -x;
  return acc;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < dim_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < dim_; ++j) os << (j ? "," : "") << at(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace ergo
