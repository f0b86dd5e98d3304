#include "core/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace ergo {

double WeightFunction::eval(double n) const {
  if (tag == Tag::Constant) return c;
  return std::pow(n + 1.0, -alpha) * std::pow(std::log(2.0 + n), -beta - eta);
}

bool WeightFunction::decreasing() const {
  if (tag == Tag::Constant) return false;
  return alpha > 0 && beta + eta >= 0;
}

MaximalPair weighted_maximal_pair(const std::vector<double>& s,
                                  const WeightFunction& eps) {
  if (s.empty())
    throw std::invalid_argument("weighted_maximal_pair: empty sequence");
  MaximalPair mp{0.0, 0.0, 0, 0, false};
  double plain = 0.0;     // sum_{n<N} s_n
  double weighted = 0.0;  // sum_{n<N} eps(n) s_n
  for (std::size_t i = 0; i < s.size(); ++i) {
    plain += s[i];
    weighted += eps.eval(static_cast<double>(i)) * s[i];
    const std::size_t n = i + 1;
    double sv = eps.eval(static_cast<double>(n)) * std::fabs(plain);
    double tv = std::fabs(weighted);
    if (sv > mp.s_value) {
      mp.s_value = sv;
      mp.argmax_s = n;
    }
    if (tv > mp.s_tilde_value) {
      mp.s_tilde_value = tv;
      mp.argmax_s_tilde = n;
    }
  }
  mp.comparison_ok = mp.s_value <= 2.0 * mp.s_tilde_value;
  return mp;
}

RmRhs rm_rhs(const WeightFunction& eps, long n_max) {
  double sum = 0.0;
  for (long n = 0; n <= n_max; ++n) {
    double e = eps.eval(static_cast<double>(n));
    double lg = std::log(static_cast<double>(n) + 2.0);
    sum += e * e * lg * lg;
  }
  RmRhs out;
  out.partial_sum = std::sqrt(sum);
  // eps^2(n) log^2(n+2) ~ n^{-2a} log^{2-2b-2e}(n): convergent iff
  // 2a > 1, or 2a == 1 and 2(b+e) - 2 > 1.
  if (eps.tag == WeightFunction::Tag::Constant) {
    out.convergent = false;
  } else {
    double a2 = 2.0 * eps.alpha;
    double lexp = 2.0 * (eps.beta + eps.eta) - 2.0;
    out.convergent = a2 > 1.0 || (a2 == 1.0 && lexp > 1.0);
  }
  return out;
}

mpq_class kronecker_limit(const std::vector<mpq_class>& a,
                          const std::vector<mpq_class>& b, std::size_t n) {
  if (n == 0 || n > a.size() || n > b.size())
    throw std::invalid_argument("kronecker_limit: bad N");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (b[i] <= 0 || b[i + 1] < b[i])
      throw std::invalid_argument("kronecker_limit: b must be positive nondecreasing");
  mpq_class sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += b[i] * a[i];
  return sum / b[n - 1];
}

}  // namespace ergo
