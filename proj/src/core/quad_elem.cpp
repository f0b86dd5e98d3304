#include "core/quad_elem.hpp"

#include <cmath>
#include <sstream>

namespace ergo {

QuadElem::QuadElem(mpq_class a, mpq_class b, long disc)
    : a_(std::move(a)), b_(std::move(b)), disc_(disc) {
  if (disc_ < 1) throw std::invalid_argument("QuadElem: disc must be >= 1");
  if (disc_ == 1) {  // sqrt(1) = 1
    a_ += b_;
    b_ = 0;
  }
  if (b_ == 0) disc_ = 1;
  a_.canonicalize();
  b_.canonicalize();
}

long QuadElem::common_disc(const QuadElem& o) const {
  if (disc_ == 1) return o.disc_;
  if (o.disc_ == 1 || o.disc_ == disc_) return disc_;
  throw std::invalid_argument("QuadElem: incompatible discriminants");
}

QuadElem QuadElem::operator+(const QuadElem& o) const {
  return QuadElem(a_ + o.a_, b_ + o.b_, common_disc(o));
}

QuadElem QuadElem::operator-(const QuadElem& o) const {
  return QuadElem(a_ - o.a_, b_ - o.b_, common_disc(o));
}

QuadElem QuadElem::operator*(const QuadElem& o) const {
  const long d = common_disc(o);
  return QuadElem(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
}

QuadElem QuadElem::inverse() const {
  // 1/(a + b sqrt D) = (a - b sqrt D) / (a^2 - b^2 D)
  mpq_class n = a_ * a_ - b_ * b_ * disc_;
  if (n == 0) throw std::domain_error("QuadElem: division by zero");
  return QuadElem(a_ / n, -b_ / n, disc_);
}

int QuadElem::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b*sqrt(D) have opposite signs: compare a^2 against b^2 D.
  mpq_class lhs = a_ * a_;
  mpq_class rhs = b_ * b_ * disc_;
  const int c = cmp(lhs, rhs);
  if (c == 0) return 0;  // only possible when D is a perfect square, i.e. D=1
  return c > 0 ? sa : sb;
}

double QuadElem::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(disc_));
}

std::string QuadElem::to_string() const {
  if (b_ == 0) return a_.get_str();
  std::ostringstream os;
  os << a_.get_str() << (sgn(b_) < 0 ? "-" : "+") << mpq_class(::abs(b_)).get_str()
     << "*sqrt(" << disc_ << ")";
  return os.str();
}

QuadElem QuadElem::sqrt_of(long d) {
  return QuadElem(mpq_class(0), mpq_class(1), d);
}

SquarefreeSplit squarefreeSplitImpl(mpz_class n) {
  SquarefreeSplit out{1, 1};
  mpz_class s = 1;
  mpz_class d = 1;
  for (mpz_class p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) d *= p;
  }
  d *= n;  // remaining prime factor (exponent 1)
  out.square_root = s;
  out.squarefree = static_cast<long>(d.get_si());
  if (!d.fits_slong_p())
    throw std::overflow_error("squarefree_split: discriminant too large");
  return out;
}

SquarefreeSplit squarefree_split(const mpz_class& n) {
  if (n <= 0) throw std::invalid_argument("squarefree_split: n must be > 0");
  return squarefreeSplitImpl(n);
}

}  // namespace ergo
