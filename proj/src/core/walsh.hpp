#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "core/torus.hpp"

namespace ergo {

struct NullSetPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WindowExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dyadic point of the unit square as a two-sided finite bit window:
/// bits ... y2 y1 | x1 x2 ... stored left to right, the split marking the
/// binary point. The baker's map is an exact one-position shift of the
/// split; one usable x-bit is consumed per application.
class DyadicPoint {
 public:
  DyadicPoint(std::vector<uint8_t> x_bits, std::vector<uint8_t> y_bits);

  static DyadicPoint random(size_t x_bits, size_t y_bits, std::mt19937_64& rng);
  static DyadicPoint from_rationals(const mpq_class& x, const mpq_class& y,
                                    size_t window);

  int x_bit(size_t k) const;  // k >= 1
  int y_bit(size_t k) const;
  size_t x_window() const { return seq_.size() - split_; }
  size_t y_window() const { return split_; }

  mpq_class x_value() const;
  mpq_class y_value() const;

 private:
  std::vector<uint8_t> seq_;
  size_t split_;
  friend DyadicPoint baker_apply(const DyadicPoint& p);
};

/// r_k(x) = sgn(sin(2^k pi x)) for exact rational x; NullSetPoint when
/// 2^k x is an integer.
int rademacher(int k, const mpq_class& x);

/// Digit rule: +1 iff the k-th binary digit of the x coordinate is 0.
int rademacher_x(int k, const DyadicPoint& p);
int rademacher_y(int k, const DyadicPoint& p);

/// Exact baker's transformation: the first x-bit moves to the front of the
/// y-bits.
DyadicPoint baker_apply(const DyadicPoint& p);

/// Case formula B(x,y) on exact rationals (independent implementation).
std::pair<mpq_class, mpq_class> baker_apply_rational(const mpq_class& x,
                                                     const mpq_class& y);

/// Walsh index set: strictly increasing nonzero integers; m >= 1 means the
/// x-Rademacher r_m(x), m <= -1 the y-Rademacher r_{|m|}(y).
using WalshIndexSet = std::vector<int>;

void validate_walsh_index(const WalshIndexSet& idx);

/// Index shift corresponding to composing with the baker's map:
/// m -> m+1, with -1 -> +1 (the y1 bit becomes the x1 bit).
WalshIndexSet walsh_shift_index(const WalshIndexSet& idx);

int walsh_eval(const WalshIndexSet& idx, const DyadicPoint& p);

/// Verifies W_idx(B(p)) == W_{idx+1}(p) exactly on random dyadic points.
bool walsh_shift_check(const WalshIndexSet& idx, int sample_count,
                       std::uint64_t seed);

/// Rate series for f = sum coeffs[idx] * W_idx along the baker orbit of p.
/// Evaluations are exact +-1 counts; deviations computed from the exact
/// rational partial sums.
RateSeries baker_rate_series(const std::map<WalshIndexSet, mpq_class>& coeffs,
                             const DyadicPoint& p, double eta,
                             const std::vector<long>& grid);

}  // namespace ergo
