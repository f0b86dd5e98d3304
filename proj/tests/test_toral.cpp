#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/int_matrix.hpp"
#include "core/torus.hpp"

using namespace ergo;

namespace {

IntMatrix fib() { return IntMatrix::from_rows({{1, 1}, {1, 0}}); }
IntMatrix doubling() { return IntMatrix::from_rows({{2, 0}, {0, 2}}); }

TorusPoint pt(long n1, long n2, long den) {
  return TorusPoint::from_rational({mpz_class(n1), mpz_class(n2)}, mpz_class(den));
}

}  // namespace

TEST_CASE("orbit periods of rational points") {
  // (1/3, 1/3) under x -> 2x: 1/3 -> 2/3 -> 1/3, period 2
  OrbitResult r = orbit_points(doubling(), pt(1, 1, 3), 10);
  CHECK(r.period == 2);
  // fixed point 0
  CHECK(orbit_points(fib(), pt(0, 0, 1), 5).period == 1);
}

TEST_CASE("evaluate on exact rational points") {
  FourierFunction f;
  f.coeffs[{mpz_class(1), mpz_class(0)}] = 1.0;
  // e^{2 pi i / 4} = i
  std::complex<double> v = evaluate(f, pt(1, 0, 4));
  CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(v.imag() == doctest::Approx(1.0));
  f.coeffs[{mpz_class(0), mpz_class(2)}] = 2.0;
  // add 2 e^{2 pi i * 2 * (1/2)} = 2
  v = evaluate(f, pt(1, 1, 2));
  CHECK(v.real() == doctest::Approx(1.0));  // e^{i pi} + 2
  CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("pointwise and spectral means agree") {
  std::mt19937_64 rng(17);
  FourierFunction f;
  std::uniform_int_distribution<long> fr(-6, 6);
  std::uniform_real_distribution<double> cd(-1, 1);
  for (int i = 0; i < 5; ++i) {
    double re = cd(rng), im = cd(rng);
    long a = fr(rng), b = fr(rng);
    f.add({mpz_class(a), mpz_class(b)}, {re, im});
    f.add({mpz_class(-a), mpz_class(-b)}, {re, -im});
  }
  for (long n : {1L, 3L, 16L}) {
    FourierFunction u = spectral_mean(f, fib(), n);
    for (int p = 0; p < 5; ++p) {
      TorusPoint x = TorusPoint::random_rational(2, 256, rng);
      std::complex<double> direct = pointwise_mean(f, fib(), x, n);
      std::complex<double> viaspec = evaluate(u, x);
      CHECK(std::abs(direct - viaspec) < 1e-10);
    }
  }
}

TEST_CASE("spectral mean does not increase the L2 norm") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<long> fr(-8, 8);
  std::uniform_real_distribution<double> cd(-1, 1);
  for (int t = 0; t < 10; ++t) {
    FourierFunction f;
    for (int i = 0; i < 6; ++i)
      f.add({mpz_class(fr(rng)), mpz_class(fr(rng))}, {cd(rng), cd(rng)});
    for (long n : {2L, 8L, 64L})
      CHECK(spectral_mean(f, fib(), n).norm_sq() <= f.norm_sq() * (1 + 1e-12));
  }
}

TEST_CASE("rate weight and geometric grid") {
  CHECK(rate_weight(100, 0.0) ==
        doctest::Approx(10.0 / std::pow(std::log(101.0), 1.5)));
  std::vector<long> g = geometric_grid(64);
  CHECK(g == std::vector<long>({2, 4, 8, 16, 32, 64}));
}

TEST_CASE("envelope statistic compares last decade to first") {
  std::vector<RateCheckpoint> pts;
  for (long n = 2; n <= (1L << 12); n *= 2)
    pts.push_back({n, 0.0, 1000.0 / n});  // decaying weighted deviation
  CHECK(envelope_statistic(pts) < 1.0);
  for (auto& p : pts) p.weighted = static_cast<double>(p.n);  // growing
  CHECK(envelope_statistic(pts) > 1.0);
}

TEST_CASE("projection norm sum respects Parseval") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> fr(-10, 10);
  std::uniform_real_distribution<double> cd(-1, 1);
  FourierFunction f;
  for (int i = 0; i < 12; ++i)
    f.add({mpz_class(fr(rng)), mpz_class(fr(rng))}, {cd(rng), cd(rng)});
  for (const IntMatrix& a : {fib(), doubling()}) {
    ShellNormTable t = projection_norm_sum(f, a);
    double expected_sq = 0.0;
    for (const auto& [xi, c] : f.coeffs)
      if (!(xi[0] == 0 && xi[1] == 0)) expected_sq += std::norm(c);
    CHECK(t.sq_total == doctest::Approx(expected_sq));
    double total = 0.0;
    for (const auto& [k, s] : t.shell_norm) total += s;
    CHECK(t.total == doctest::Approx(total));
    CHECK(t.total * t.total >= t.sq_total - 1e-12);  // l1 >= l2
  }
}

TEST_CASE("modulus of continuity of a single harmonic") {
  FourierFunction f;
  f.coeffs[{mpz_class(1), mpz_class(0)}] = 1.0;
  // sup_{|y| <= t} ||f(.+y) - f||_2 = 2 |sin(pi t)| for f = e(x_1), t <= 1/2
  for (double t : {0.25, 0.125, 0.0625}) {
    double w = modulus_of_continuity(f, t, 16, 99);
    CHECK(w <= 2.0 * std::abs(std::sin(M_PI * t)) + 1e-9);
    CHECK(w >= 1.9 * std::abs(std::sin(M_PI * t)));  // axis probe nearly attains it
  }
}

TEST_CASE("dyadic modulus bound is reproducible and finite") {
  FourierFunction f;
  f.coeffs[{mpz_class(3), mpz_class(-2)}] = 0.5;
  f.coeffs[{mpz_class(-3), mpz_class(2)}] = 0.5;
  DyadicModulusBound b1 = dyadic_modulus_bound(f, 2.0, 8, 42);
  DyadicModulusBound b2 = dyadic_modulus_bound(f, 2.0, 8, 42);
  CHECK(b1.lhs == b2.lhs);
  CHECK(b1.rhs == b2.rhs);
  CHECK(std::isfinite(b1.ratio));
  CHECK(b1.lhs > 0.0);
  CHECK(b1.rhs > 0.0);
}

TEST_CASE("domain indicators: measure and membership") {
  DomainIndicator box = DomainIndicator::box({mpq_class(0), mpq_class(0)},
                                             {mpq_class(1, 2), mpq_class(1, 2)});
  CHECK(box.measure() == doctest::Approx(0.25));
  CHECK(box.contains(pt(1, 1, 4)));
  CHECK(box.contains(pt(0, 0, 1)));          // half-open: lo included
  CHECK_FALSE(box.contains(pt(1, 1, 2)));    // hi excluded
  CHECK_FALSE(box.contains(pt(3, 1, 4)));

  DomainIndicator disk = DomainIndicator::disk(mpq_class(1, 2), mpq_class(1, 2),
                                               mpq_class(1, 4));
  CHECK(disk.measure() == doctest::Approx(M_PI / 16.0));
  CHECK(disk.contains(pt(1, 1, 2)));
  CHECK(disk.contains(pt(1, 2, 4)));  // boundary point included
  CHECK_FALSE(disk.contains(pt(0, 0, 1)));

  DomainIndicator tri = DomainIndicator::polygon({{mpq_class(0), mpq_class(0)},
                                                  {mpq_class(1, 2), mpq_class(0)},
                                                  {mpq_class(0), mpq_class(1, 2)}});
  CHECK(tri.measure() == doctest::Approx(0.125));
  CHECK(tri.contains(pt(1, 1, 8)));
  CHECK_FALSE(tri.contains(pt(3, 3, 8)));
}

TEST_CASE("boundary distance on the torus") {
  DomainIndicator disk = DomainIndicator::disk(mpq_class(1, 2), mpq_class(1, 2),
                                               mpq_class(1, 4));
  CHECK(disk.boundary_distance(0.5, 0.5) == doctest::Approx(0.25));
  CHECK(disk.boundary_distance(0.5, 0.75) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("boundary shell measure matches the perimeter asymptotics") {
  DomainIndicator box = DomainIndicator::box({mpq_class(0), mpq_class(0)},
                                             {mpq_class(1, 2), mpq_class(1, 2)});
  const double t = 0.01;
  MonteCarloEstimate e = boundary_shell_measure(box, t, 400000, 7);
  // measure of {dist to boundary <= t} = 4 sides * 1/2 * 2t, minus corner terms
  const double truth = 4.0 * 0.5 * 2.0 * t - 4.0 * 4.0 * t * t +
                       4.0 * (M_PI / 4.0) * t * t;
  CHECK(std::abs(e.estimate - truth) < 5.0 * e.std_error + 1e-4);
}

TEST_CASE("indicator discrepancy runs and decays on a generic point") {
  std::mt19937_64 rng(31);
  TorusPoint x = TorusPoint::random_rational(2, 512, rng);
  DomainIndicator box = DomainIndicator::box({mpq_class(0), mpq_class(0)},
                                             {mpq_class(1, 2), mpq_class(1, 2)});
  RateSeries rs = indicator_discrepancy(box, fib(), x, geometric_grid(1 << 12), 0.5);
  CHECK(rs.checkpoints.size() == 12);
  CHECK(rs.checkpoints.back().deviation < 0.05);
}

TEST_CASE("precision exhaustion surfaces as the dedicated error") {
  TorusPoint x = TorusPoint::from_double({0.3, 0.7});
  CHECK_THROWS_AS(orbit_points(fib(), x, 100000), PrecisionExhausted);
}
