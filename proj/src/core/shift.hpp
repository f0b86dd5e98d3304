#pragma once

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

namespace ergo {

/// Sparse coefficient vector of f relative to a shift basis phi_{j,k}:
/// amps[(j,k)] is the amplitude of phi_{j,k}, fixed_part the amplitude of
/// the component on which the operator acts as the identity. Amplitudes
/// are exact rationals.
struct CoeffVector {
  enum class Kind { Unilateral, Bilateral };

  Kind kind = Kind::Bilateral;
  std::map<std::pair<long, long>, mpq_class> amps;
  mpq_class fixed_part = 0;

  void set(long j, long k, mpq_class v);
  mpq_class norm_sq() const;  // sum |amps|^2 + fixed_part^2
};

/// T: phi_{j,k} -> phi_{j,k+1}, identity on the fixed part.
CoeffVector apply_shift(const CoeffVector& v);

/// U_N v = (1/N) sum_{n<N} T^n v, exact.
CoeffVector ergodic_mean(const CoeffVector& v, long n);

/// Exact squared norms of the per-shell projections Pi_k v.
std::map<long, mpq_class> projection_norms_sq(const CoeffVector& v);

struct NormBoundResult {
  double lhs;          // ||U_N v - fixed||
  double rhs;          // N^{-1/2} sum_k ||Pi_k v||
  bool sharp;          // support in a single shell (lhs == rhs exactly)
  bool verified;       // lhs <= rhs certified by exact arithmetic
  mpq_class lhs_sq;    // exact ||U_N v - fixed||^2
};

/// Norm-bound check via the exact closed form
///   <U_N Pi_i v, U_N Pi_j v> = max(0, N - |ki-kj|) / N^2 * sum_j a(j,ki) a(j,kj)
/// with the triangle inequality certified pairwise by squared
/// Cauchy-Schwarz comparisons (all rational).
NormBoundResult norm_bound_check(const CoeffVector& v, long n);

/// ||U_N f_H||^2 / ||f_H||^2 for f_H = sum_{k=0}^{H} phi_{0,k}, exact.
mpq_class banach_witness_ratio_sq(long h, long n);

}  // namespace ergo
