#include "core/shift.hpp"

#include <cmath>
#include <stdexcept>

namespace ergo {

void CoeffVector::set(long j, long k, mpq_class v) {
  if (kind == Kind::Unilateral && k < 0)
    throw std::invalid_argument("CoeffVector: unilateral kind admits no k < 0");
  if (v == 0)
    amps.erase({j, k});
  else
    amps[{j, k}] = std::move(v);
}

mpq_class CoeffVector::norm_sq() const {
  mpq_class s = fixed_part * fixed_part;
  for (const auto& [jk, a] : amps) s += a * a;
  return s;
}

CoeffVector apply_shift(const CoeffVector& v) {
  CoeffVector out;
  out.kind = v.kind;
  out.fixed_part = v.fixed_part;
  for (const auto& [jk, a] : v.amps) out.amps[{jk.first, jk.second + 1}] = a;
  return out;
}

CoeffVector ergodic_mean(const CoeffVector& v, long n) {
  if (n < 1) throw std::invalid_argument("ergodic_mean: N must be >= 1");
  CoeffVector out;
  out.kind = v.kind;
  out.fixed_part = v.fixed_part;
  mpq_class inv_n(1, n);
  for (const auto& [jk, a] : v.amps) {
    mpq_class share = a * inv_n;
    for (long step = 0; step < n; ++step)
      out.amps[{jk.first, jk.second + step}] += share;
  }
  for (auto it = out.amps.begin(); it != out.amps.end();)
    it = (it->second == 0) ? out.amps.erase(it) : std::next(it);
  return out;
}

std::map<long, mpq_class> projection_norms_sq(const CoeffVector& v) {
  std::map<long, mpq_class> out;
  for (const auto& [jk, a] : v.amps) out[jk.second] += a * a;
  return out;
}

NormBoundResult norm_bound_check(const CoeffVector& v, long n) {
  if (n < 1) throw std::invalid_argument("norm_bound_check: N must be >= 1");

  // Per-shell cross sums dot(k1,k2) = sum_j a(j,k1) a(j,k2).
  // Organize amplitudes per j-row first.
  std::map<long, std::map<long, mpq_class>> rows;  // j -> k -> amp
  for (const auto& [jk, a] : v.amps) rows[jk.first][jk.second] = a;

  std::map<long, mpq_class> shell_sq = projection_norms_sq(v);
  std::vector<long> shells;
  for (const auto& [k, s] : shell_sq) shells.push_back(k);

  std::map<std::pair<long, long>, mpq_class> dot;
  for (const auto& [j, row] : rows)
    for (auto it1 = row.begin(); it1 != row.end(); ++it1)
      for (auto it2 = it1; it2 != row.end(); ++it2)
        dot[{it1->first, it2->first}] += it1->second * it2->second;

  const mpq_class n_q(n);
  mpq_class lhs_sq = 0;
  bool verified = true;
  for (size_t i = 0; i < shells.size(); ++i)
    for (size_t j = i; j < shells.size(); ++j) {
      long k1 = shells[i], k2 = shells[j];
      long gap = k2 - k1;
      if (gap >= n) continue;
      mpq_class overlap(n - gap);
      auto it = dot.find({k1, k2});
      mpq_class d = (it == dot.end()) ? mpq_class(0) : it->second;
      mpq_class inner = overlap * d / (n_q * n_q);  // <U_N Pi_{k1} v, U_N Pi_{k2} v>
      lhs_sq += (i == j) ? inner : 2 * inner;
      if (i != j) {
        // Squared Cauchy-Schwarz certificate for the triangle inequality.
        if (inner * inner > (shell_sq[k1] / n_q) * (shell_sq[k2] / n_q))
          verified = false;
      }
    }

  NormBoundResult r;
  r.lhs_sq = lhs_sq;
  r.lhs = std::sqrt(lhs_sq.get_d());
  double sum_norms = 0.0;
  for (const auto& [k, s] : shell_sq) sum_norms += std::sqrt(s.get_d());
  r.rhs = sum_norms / std::sqrt(static_cast<double>(n));
  r.sharp = shells.size() <= 1;
  if (r.sharp) {
    // single shell: lhs^2 must equal (sum_k a_k^2) / N exactly
    mpq_class expect = 0;
    for (const auto& [k, s] : shell_sq) expect += s / n_q;
    if (lhs_sq != expect) verified = false;
  }
  r.verified = verified;
  return r;
}

mpq_class banach_witness_ratio_sq(long h, long n) {
  if (h < 0 || n < 1)
    throw std::invalid_argument("banach_witness: H >= 0 and N >= 1 required");
  // U_N f_H has amplitude w(K)/N at position K, K = 0..H+N-1, with
  // w(K) = #{0 <= n < N : 0 <= K - n <= H}.
  mpz_class sum_w_sq = 0;
  for (long k = 0; k <= h + n - 1; ++k) {
    long w = std::min(k, h) - std::max(0L, k - n + 1) + 1;
    sum_w_sq += mpz_class(w) * w;
  }
  mpq_class ratio(sum_w_sq, mpz_class(n) * n * (h + 1));
  ratio.canonicalize();
  return ratio;
}

}  // namespace ergo
