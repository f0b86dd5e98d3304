#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "core/int_matrix.hpp"
#include "core/lattice.hpp"

namespace ergo {

struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Freq = std::vector<mpz_class>;

/// Sparse trigonometric expansion f(x) = sum_xi fhat(xi) e^{2 pi i xi.x}.
struct FourierFunction {
  int dim = 2;
  std::map<Freq, std::complex<double>> coeffs;

  std::complex<double> mean() const {
    auto it = coeffs.find(Freq(dim, mpz_class(0)));
    return it == coeffs.end() ? std::complex<double>(0) : it->second;
  }
  void add(Freq xi, std::complex<double> c) { coeffs[std::move(xi)] += c; }
  double norm_sq() const;
  bool hermitian() const;  // fhat(-xi) == conj(fhat(xi)) on the support
};

/// Point of T^d, either an exact rational vector p/q (reduced mod 1) or a
/// double vector carrying a running error bound.
struct TorusPoint {
  bool rational = true;
  std::vector<mpz_class> num;  // 0 <= num_i < den
  mpz_class den = 1;
  std::vector<double> x;  // fixed-point mode
  double err = 0.0;

  int dim() const { return rational ? static_cast<int>(num.size())
                                    : static_cast<int>(x.size()); }

  static TorusPoint from_rational(std::vector<mpz_class> num, mpz_class den);
  static TorusPoint from_double(std::vector<double> x);

  /// Generic point: random numerators over a random denom_bits-bit prime
  /// denominator.
  static TorusPoint random_rational(int dim, int denom_bits, std::mt19937_64& rng);

  std::vector<double> as_double() const;
};

struct OrbitResult {
  std::vector<TorusPoint> points;
  long period = -1;  // revisit of the initial point, -1 if none within N
};

/// First N points of the orbit x, Ax, A^2 x, ... (mod 1).
OrbitResult orbit_points(const IntMatrix& a, const TorusPoint& x, long n);

std::complex<double> evaluate(const FourierFunction& f, const TorusPoint& x);

/// (1/N) sum_{n<N} f(A^n x), streaming over the orbit.
std::complex<double> pointwise_mean(const FourierFunction& f, const IntMatrix& a,
                                    const TorusPoint& x, long n);

/// U_N f as a FourierFunction: fhat(xi)/N accumulated at (A*)^n xi, n < N.
FourierFunction spectral_mean(const FourierFunction& f, const IntMatrix& a, long n);

struct RateCheckpoint {
  long n;
  double deviation;  // |U_N f(x) - fhat(0)|
  double weighted;   // sqrt(N) (log(1+N))^{-3/2-eta} * deviation
};

struct RateSeries {
  std::vector<RateCheckpoint> checkpoints;
  double eta = 0.0;
  // max weighted value over the last geometric decade of checkpoints
  // divided by max over the first decade; < 1 indicates decay.
  double envelope = 0.0;
};

double rate_weight(long n, double eta);
std::vector<long> geometric_grid(long n_max);  // 2, 4, ..., n_max
double envelope_statistic(const std::vector<RateCheckpoint>& pts);

RateSeries rate_series(const FourierFunction& f, const IntMatrix& a,
                       const TorusPoint& x, double eta,
                       const std::vector<long>& grid);

/// sum_xi (log(1+|xi|))^{1+delta} |fhat(xi)|^2 over the sparse support.
double log_weight_sum(const FourierFunction& f, double delta);

struct ShellNormTable {
  std::map<long, double> shell_norm;  // k -> ||Pi_k f||
  double total = 0.0;                 // sum_k ||Pi_k f||
  double sq_total = 0.0;              // sum_k ||Pi_k f||^2 (Parseval check)
};

ShellNormTable projection_norm_sum(const FourierFunction& f, const IntMatrix& a);

/// Lower estimate of omega(f, t) by maximizing the Parseval expression over
/// axis shifts t * 2^{-i} (i <= 6) and random directions of magnitude <= t.
double modulus_of_continuity(const FourierFunction& f, double t,
                             int random_samples, std::uint64_t seed);

struct DyadicModulusBound {
  double lhs;  // sum log^alpha(1+|xi|) |fhat|^2
  double rhs;  // sum_{j<=J} (1+j^alpha) omega^2(f, 2^{-j}) (lower estimate)
  double ratio;
};

DyadicModulusBound dyadic_modulus_bound(const FourierFunction& f, double alpha,
                                        int j_max, std::uint64_t seed);

/// Membership indicator of a library domain of T^2 with known measure.
struct DomainIndicator {
  enum class Shape { Box, Disk, Poly };

  Shape shape = Shape::Box;
  // Box: [lo_i, hi_i) per axis. Disk: center/radius. Poly: convex, ccw.
  std::vector<mpq_class> lo, hi;
  mpq_class cx, cy, radius;
  std::vector<std::pair<mpq_class, mpq_class>> vertices;

  static DomainIndicator box(std::vector<mpq_class> lo, std::vector<mpq_class> hi);
  static DomainIndicator disk(mpq_class cx, mpq_class cy, mpq_class r);
  static DomainIndicator polygon(std::vector<std::pair<mpq_class, mpq_class>> v);

  double measure() const;
  bool contains(const TorusPoint& p) const;  // exact for rational points
  bool contains_double(double px, double py) const;
  double boundary_distance(double px, double py) const;  // torus metric
};

RateSeries indicator_discrepancy(const DomainIndicator& omega, const IntMatrix& a,
                                 const TorusPoint& x,
                                 const std::vector<long>& grid, double eta);

struct MonteCarloEstimate {
  double estimate;
  double std_error;
  long samples;
};

/// Monte-Carlo estimate of |{x : dist(x, boundary) <= t}|.
MonteCarloEstimate boundary_shell_measure(const DomainIndicator& omega, double t,
                                          long samples, std::uint64_t seed);

}  // namespace ergo
