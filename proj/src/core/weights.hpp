#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace ergo {

/// Symbolic positive weight. PowerLog(alpha, beta, eta) encodes
/// eps(n) = (n+1)^{-alpha} (log(2+n))^{-beta-eta}; Constant encodes
/// eps(n) = c.
struct WeightFunction {
  enum class Tag { PowerLog, Constant };

  Tag tag = Tag::PowerLog;
  double alpha = 0.5, beta = 1.5, eta = 0.0;  // PowerLog
  double c = 1.0;                             // Constant

  static WeightFunction power_log(double alpha, double beta, double eta) {
    WeightFunction w;
    w.tag = Tag::PowerLog;
    w.alpha = alpha;
    w.beta = beta;
    w.eta = eta;
    return w;
  }
  static WeightFunction constant(double c) {
    WeightFunction w;
    w.tag = Tag::Constant;
    w.c = c;
    return w;
  }

  double eval(double n) const;
  bool decreasing() const;
};

struct MaximalPair {
  double s_value;        // max_N eps(N) |sum_{n<N} s_n|
  double s_tilde_value;  // max_N |sum_{n<N} eps(n) s_n|
  std::size_t argmax_s;
  std::size_t argmax_s_tilde;
  bool comparison_ok;  // S <= 2 * S~
};

/// Maximal comparison of the unweighted vs Abel-weighted partial sums.
MaximalPair weighted_maximal_pair(const std::vector<double>& s,
                                  const WeightFunction& eps);

struct RmRhs {
  double partial_sum;  // (sum_{n<=N_max} eps^2(n) log^2(n+2))^{1/2}
  bool convergent;     // tail converges (integral comparison on the symbolic form)
};

/// Partial Rademacher-Menshov weight sum with a symbolic convergence flag.
RmRhs rm_rhs(const WeightFunction& eps, long n_max);

/// b_N^{-1} sum_{n<N} b_n a_n, exact in rationals.
mpq_class kronecker_limit(const std::vector<mpq_class>& a,
                          const std::vector<mpq_class>& b, std::size_t n);

}  // namespace ergo
