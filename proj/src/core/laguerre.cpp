#include "core/laguerre.hpp"

#include <cmath>
#include <stdexcept>

namespace ergo {

int LaguerrePoly::degree() const {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (c[k] != 0) return k;
  return -1;
}

void LaguerrePoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

bool LaguerrePoly::operator==(const LaguerrePoly& o) const {
  const size_t n = std::max(c.size(), o.c.size());
  for (size_t k = 0; k < n; ++k) {
    mpq_class a = k < c.size() ? c[k] : mpq_class(0);
    mpq_class b = k < o.c.size() ? o.c[k] : mpq_class(0);
    if (a != b) return false;
  }
  return true;
}

mpq_class LaguerrePoly::eval(const mpq_class& x) const {
  mpq_class v = 0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) v = v * x + c[k];
  return v;
}

LaguerrePoly operator+(const LaguerrePoly& a, const LaguerrePoly& b) {
  LaguerrePoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (size_t k = 0; k < r.c.size(); ++k) {
    if (k < a.c.size()) r.c[k] += a.c[k];
    if (k < b.c.size()) r.c[k] += b.c[k];
  }
  return r;
}

LaguerrePoly operator*(const mpq_class& s, const LaguerrePoly& p) {
  LaguerrePoly r = p;
  for (auto& ck : r.c) ck *= s;
  return r;
}

LaguerrePoly laguerre_poly(int n) {
  if (n < 0) throw std::invalid_argument("laguerre_poly: n >= 0 required");
  LaguerrePoly p;
  p.c.resize(static_cast<size_t>(n) + 1);
  mpz_class kfact = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) kfact *= k;
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    p.c[k] = mpq_class(binom, kfact);
    if (k % 2) p.c[k] = -p.c[k];
    p.c[k].canonicalize();
  }
  return p;
}

LaguerrePoly laguerre_shift(const LaguerrePoly& p) {
  // c_k x^k -> c_k x^k - c_k x^{k+1} / (k+1)
  LaguerrePoly r;
  r.c.resize(p.c.size() + 1);
  for (size_t k = 0; k < p.c.size(); ++k) {
    r.c[k] += p.c[k];
    r.c[k + 1] -= p.c[k] / mpq_class(static_cast<long>(k) + 1);
  }
  r.trim();
  return r;
}

mpq_class laguerre_inner(const LaguerrePoly& a, const LaguerrePoly& b) {
  // <x^i, x^j> = (i+j)!
  const int da = a.degree(), db = b.degree();
  if (da < 0 || db < 0) return 0;
  std::vector<mpz_class> fact(static_cast<size_t>(da + db) + 1);
  fact[0] = 1;
  for (size_t k = 1; k < fact.size(); ++k) fact[k] = fact[k - 1] * k;
  mpq_class s = 0;
  for (int i = 0; i <= da; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j <= db; ++j)
      if (b.c[j] != 0) s += a.c[i] * b.c[j] * fact[static_cast<size_t>(i + j)];
  }
  return s;
}

LaguerreMeanCheck laguerre_mean_check(const std::map<int, mpq_class>& coeffs,
                                      long n) {
  if (n < 1) throw std::invalid_argument("laguerre_mean_check: N >= 1 required");
  // U_N f as a polynomial, exactly.
  LaguerrePoly f;
  for (const auto& [m, cm] : coeffs) {
    if (m < 0) throw std::invalid_argument("laguerre_mean_check: n >= 0 required");
    f = f + cm * laguerre_poly(m);
  }
  LaguerrePoly sum;
  LaguerrePoly cur = f;
  for (long step = 0; step < n; ++step) {
    sum = sum + cur;
    if (step + 1 < n) cur = laguerre_shift(cur);
  }
  mpq_class inv_n(1, n);
  LaguerrePoly u = inv_n * sum;

  LaguerreMeanCheck out;
  out.lhs_sq = laguerre_inner(u, u);
  mpq_class abs_sum = 0;
  int nonzero = 0;
  for (const auto& [m, cm] : coeffs) {
    if (cm == 0) continue;
    abs_sum += ::abs(cm);
    ++nonzero;
  }
  out.rhs_sq = abs_sum * abs_sum / n;
  out.verified = out.lhs_sq <= out.rhs_sq;
  out.sharp = nonzero <= 1;
  if (out.sharp && out.lhs_sq != out.rhs_sq) out.verified = false;
  return out;
}

RateSeries laguerre_pointwise_rate(const std::map<int, mpq_class>& coeffs,
                                   const mpq_class& x, double eta,
                                   const std::vector<long>& grid) {
  RateSeries rs;
  rs.eta = eta;
  if (coeffs.empty()) throw std::invalid_argument("empty coefficient map");
  const long n_max = grid.empty() ? 0 : grid.back();
  const int deg = coeffs.rbegin()->first;

  // T^j f = sum_m c_m L_{m+j}, so the partial sums only need the values
  // L_k(x) for k up to deg + n_max. With x = p/q, write L_k(x) as
  // a_k / (k! q^k); the three-term recurrence becomes the integer recurrence
  //   a_{k+1} = ((2k+1) q - p) a_k - k^2 q^2 a_{k-1}.
  const mpz_class p = x.get_num();
  const mpz_class q = x.get_den();
  const mpz_class q_sq = q * q;

  // lag[i] holds a_{k-1+i} scaled values for the sliding window; we also keep
  // the exact L_k(x) in the window [n, n+deg] as mpq built on demand.
  std::vector<mpq_class> window(static_cast<size_t>(deg) + 2);
  mpz_class a_prev = 1;       // a_0, L_0 = 1
  mpz_class a_cur = q - p;    // a_1
  mpz_class fact = 1;         // k! for current a_cur index
  mpz_class qpow = q;         // q^k for current a_cur index
  long k_cur = 1;

  // Fill L_0 .. L_{deg+1} into the window initially.
  window[0] = 1;
  auto advance = [&]() {
    // computes a_{k_cur+1} and steps the scaling factors
    mpz_class a_next = ((2 * k_cur + 1) * q - p) * a_cur -
                       mpz_class(k_cur) * k_cur * q_sq * a_prev;
    a_prev = a_cur;
    a_cur = a_next;
    ++k_cur;
    fact *= k_cur;
    qpow *= q;
  };
  auto current_value = [&]() {
    mpq_class v(a_cur, fact * qpow);
    v.canonicalize();
    return v;
  };
  if (deg + 1 >= 1) window[1] = current_value();
  for (long k = 2; k <= deg + 1; ++k) {
    advance();
    window[static_cast<size_t>(k)] = current_value();
  }

  // value of T^n f at x for the current window base n
  auto dot = [&](long base) {
    mpq_class acc = 0;
    for (const auto& [m, cm] : coeffs)
      acc += cm * window[static_cast<size_t>((base + m) % (deg + 2))];
    return acc;
  };

  mpq_class sum = 0;
  long done = 0;
  for (long n_target : grid) {
    while (done < n_target) {
      sum += dot(done);
      if (done + 1 < n_max) {
        advance();
        window[static_cast<size_t>((done + 1 + deg + 1) % (deg + 2))] =
            current_value();
      }
      ++done;
    }
    mpq_class mean = sum / done;
    const double dev = std::abs(mean.get_d());
    rs.checkpoints.push_back({done, dev, rate_weight(done, eta) * dev});
  }
  rs.envelope = envelope_statistic(rs.checkpoints);
  return rs;
}

}  // namespace ergo
