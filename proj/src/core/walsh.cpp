#include "core/walsh.hpp"

#include <algorithm>

namespace ergo {

DyadicPoint::DyadicPoint(std::vector<uint8_t> x_bits, std::vector<uint8_t> y_bits)
    : split_(y_bits.size()) {
  seq_.assign(y_bits.rbegin(), y_bits.rend());
  seq_.insert(seq_.end(), x_bits.begin(), x_bits.end());
  for (uint8_t b : seq_)
    if (b > 1) throw std::invalid_argument("DyadicPoint: bits must be 0/1");
}

DyadicPoint DyadicPoint::random(size_t x_bits, size_t y_bits,
                                std::mt19937_64& rng) {
  std::vector<uint8_t> xs(x_bits), ys(y_bits);
  for (auto& b : xs) b = static_cast<uint8_t>(rng() & 1u);
  for (auto& b : ys) b = static_cast<uint8_t>(rng() & 1u);
  return DyadicPoint(std::move(xs), std::move(ys));
}

DyadicPoint DyadicPoint::from_rationals(const mpq_class& x, const mpq_class& y,
                                        size_t window) {
  auto bits_of = [window](mpq_class v) {
    if (v < 0 || v >= 1)
      throw std::invalid_argument("DyadicPoint: coordinates must be in [0,1)");
    std::vector<uint8_t> bits;
    for (size_t i = 0; i < window; ++i) {
      v *= 2;
      if (v >= 1) {
        bits.push_back(1);
        v -= 1;
      } else {
        bits.push_back(0);
      }
    }
    if (v != 0)
      throw std::invalid_argument("DyadicPoint: not dyadic within the window");
    return bits;
  };
  return DyadicPoint(bits_of(x), bits_of(y));
}

int DyadicPoint::x_bit(size_t k) const {
  if (k < 1 || split_ + k - 1 >= seq_.size())
    throw WindowExhausted("DyadicPoint: x-bit beyond window");
  return seq_[split_ + k - 1];
}

int DyadicPoint::y_bit(size_t k) const {
  if (k < 1 || k > split_)
    throw WindowExhausted("DyadicPoint: y-bit beyond window");
  return seq_[split_ - k];
}

mpq_class DyadicPoint::x_value() const {
  mpz_class n = 0;
  const size_t w = x_window();
  for (size_t k = 1; k <= w; ++k) n = 2 * n + x_bit(k);
  mpq_class v(n, mpz_class(1) << w);
  v.canonicalize();
  return v;
}

mpq_class DyadicPoint::y_value() const {
  mpz_class n = 0;
  const size_t w = y_window();
  for (size_t k = 1; k <= w; ++k) n = 2 * n + y_bit(k);
  mpq_class v(n, mpz_class(1) << w);
  v.canonicalize();
  return v;
}

int rademacher(int k, const mpq_class& x) {
  if (k < 1) throw std::invalid_argument("rademacher: k >= 1 required");
  // sgn(sin(2^k pi x)) = +1 iff (2^k x) mod 2 in (0,1), -1 iff in (1,2).
  mpq_class t = x * (mpz_class(1) << k);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  mpq_class frac = t - mpq_class(fl);
  if (frac == 0) throw NullSetPoint("rademacher: 2^k x is an integer");
  return mpz_odd_p(fl.get_mpz_t()) ? -1 : +1;
}

namespace {

int digit_sign(const DyadicPoint& p, int k, bool x_coord) {
  // +1 iff the k-th digit is 0; undefined (null set) iff all digits from
  // position k+1 on are 0 within the window, i.e. 2^k * coordinate integral.
  const size_t w = x_coord ? p.x_window() : p.y_window();
  bool tail_nonzero = false;
  for (size_t j = static_cast<size_t>(k) + 1; j <= w; ++j) {
    if ((x_coord ? p.x_bit(j) : p.y_bit(j)) != 0) {
      tail_nonzero = true;
      break;
    }
  }
  if (!tail_nonzero)
    throw NullSetPoint("rademacher: dyadic point on the null set");
  return (x_coord ? p.x_bit(static_cast<size_t>(k)) : p.y_bit(static_cast<size_t>(k))) == 0
             ? +1
             : -1;
}

}  // namespace

int rademacher_x(int k, const DyadicPoint& p) { return digit_sign(p, k, true); }
int rademacher_y(int k, const DyadicPoint& p) { return digit_sign(p, k, false); }

DyadicPoint baker_apply(const DyadicPoint& p) {
  if (p.x_window() < 1)
    throw WindowExhausted("baker_apply: no x-bits left in the window");
  DyadicPoint q = p;
  q.split_ += 1;
  return q;
}

std::pair<mpq_class, mpq_class> baker_apply_rational(const mpq_class& x,
                                                     const mpq_class& y) {
  if (x < 0 || x >= 1 || y < 0 || y >= 1)
    throw std::invalid_argument("baker_apply_rational: point outside [0,1)^2");
  if (x < mpq_class(1, 2)) return {2 * x, y / 2};
  return {2 * x - 1, y / 2 + mpq_class(1, 2)};
}

void validate_walsh_index(const WalshIndexSet& idx) {
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] == 0)
      throw std::invalid_argument("WalshIndexSet: indices must be nonzero");
    if (i > 0 && idx[i] <= idx[i - 1])
      throw std::invalid_argument("WalshIndexSet: indices must be strictly increasing");
  }
}

WalshIndexSet walsh_shift_index(const WalshIndexSet& idx) {
  WalshIndexSet out;
  out.reserve(idx.size());
  for (int m : idx) out.push_back(m == -1 ? 1 : m + 1);
  std::sort(out.begin(), out.end());
  return out;
}

int walsh_eval(const WalshIndexSet& idx, const DyadicPoint& p) {
  validate_walsh_index(idx);
  int prod = 1;
  for (int m : idx)
    prod *= (m >= 1) ? rademacher_x(m, p) : rademacher_y(-m, p);
  return prod;
}

bool walsh_shift_check(const WalshIndexSet& idx, int sample_count,
                       std::uint64_t seed) {
  validate_walsh_index(idx);
  WalshIndexSet shifted = walsh_shift_index(idx);
  int max_abs = 1;
  for (int m : idx) max_abs = std::max(max_abs, std::abs(m) + 1);
  std::mt19937_64 rng(seed);
  for (int s = 0; s < sample_count; ++s) {
    DyadicPoint p = DyadicPoint::random(static_cast<size_t>(max_abs) + 8,
                                        static_cast<size_t>(max_abs) + 8, rng);
    int lhs, rhs;
    try {
      lhs = walsh_eval(idx, baker_apply(p));
      rhs = walsh_eval(shifted, p);
    } catch (const NullSetPoint&) {
      continue;  // random tail of zeros; skip the sample
    }
    if (lhs != rhs) return false;
  }
  return true;
}

RateSeries baker_rate_series(const std::map<WalshIndexSet, mpq_class>& coeffs,
                             const DyadicPoint& p, double eta,
                             const std::vector<long>& grid) {
  RateSeries rs;
  rs.eta = eta;
  for (const auto& [idx, c] : coeffs) {
    validate_walsh_index(idx);
    if (idx.empty())
      throw std::invalid_argument("baker_rate_series: constant term not allowed");
  }
  const long n_max = grid.empty() ? 0 : grid.back();
  // exact +-1 partial counts per index set
  std::vector<const WalshIndexSet*> idxs;
  std::vector<mpq_class> cs;
  for (const auto& [idx, c] : coeffs) {
    idxs.push_back(&idx);
    cs.push_back(c);
  }
  std::vector<long> counts(idxs.size(), 0);
  DyadicPoint cur = p;
  long done = 0;
  for (long n_target : grid) {
    while (done < n_target) {
      for (size_t i = 0; i < idxs.size(); ++i) counts[i] += walsh_eval(*idxs[i], cur);
      if (done + 1 < n_max) cur = baker_apply(cur);
      ++done;
    }
    mpq_class dev = 0;
    for (size_t i = 0; i < idxs.size(); ++i) dev += cs[i] * counts[i];
    dev /= done;
    double d = std::abs(dev.get_d());
    rs.checkpoints.push_back({done, d, rate_weight(done, eta) * d});
  }
  rs.envelope = envelope_statistic(rs.checkpoints);
  return rs;
}

}  // namespace ergo
