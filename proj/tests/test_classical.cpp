#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/laguerre.hpp"
#include "core/walsh.hpp"

using namespace ergo;

TEST_CASE("rademacher on exact rationals matches sgn(sin(2^k pi x))") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> num(1, 1022), den_pow(10, 16);
  for (int t = 0; t < 200; ++t) {
    long q = 1L << den_pow(rng);
    mpq_class x(num(rng) * 2 + 1, q);  // odd numerator: never a null point
    x.canonicalize();
    for (int k = 1; k <= 6; ++k) {
      const double s = std::sin(std::pow(2.0, k) * M_PI * x.get_d());
      CHECK(rademacher(k, x) == (s > 0 ? 1 : -1));
    }
  }
  CHECK_THROWS_AS(rademacher(2, mpq_class(1, 4)), NullSetPoint);
}

TEST_CASE("dyadic points: values and digit rule") {
  // x = 0.101_2 = 5/8, y = 0.011_2 = 3/8
  DyadicPoint p({1, 0, 1}, {0, 1, 1});
  CHECK(p.x_value() == mpq_class(5, 8));
  CHECK(p.y_value() == mpq_class(3, 8));
  CHECK(p.x_bit(1) == 1);
  CHECK(p.x_bit(2) == 0);
  CHECK(p.x_bit(3) == 1);
  CHECK(p.y_bit(1) == 0);
  CHECK(p.y_bit(2) == 1);
  // digit rule agrees with the sign definition on the rational value
  for (int k = 1; k <= 2; ++k)
    CHECK(rademacher_x(k, p) == rademacher(k, p.x_value()));
}

TEST_CASE("baker map: bit shift equals the case formula") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 100; ++t) {
    DyadicPoint p = DyadicPoint::random(12, 12, rng);
    DyadicPoint q = baker_apply(p);
    auto [bx, by] = baker_apply_rational(p.x_value(), p.y_value());
    CHECK(q.x_value() == bx);
    CHECK(q.y_value() == by);
  }
}

TEST_CASE("walsh shift identity at specific points") {
  std::mt19937_64 rng(47);
  for (const WalshIndexSet& idx :
       {WalshIndexSet{1}, WalshIndexSet{-1}, WalshIndexSet{-3, 2, 5},
        WalshIndexSet{-2, -1, 1, 2}}) {
    WalshIndexSet shifted = walsh_shift_index(idx);
    for (int t = 0; t < 50; ++t) {
      DyadicPoint p = DyadicPoint::random(16, 16, rng);
      CHECK(walsh_eval(shifted, p) == walsh_eval(idx, baker_apply(p)));
    }
  }
}

TEST_CASE("walsh index validation") {
  CHECK_THROWS(validate_walsh_index(WalshIndexSet{0}));
  CHECK_THROWS(validate_walsh_index(WalshIndexSet{2, 1}));
  CHECK_THROWS(validate_walsh_index(WalshIndexSet{1, 1}));
  CHECK(walsh_shift_index(WalshIndexSet{-1}) == WalshIndexSet{1});
  CHECK(walsh_shift_index(WalshIndexSet{-2, 1}) == (WalshIndexSet{-1, 2}));
}

TEST_CASE("walsh shift check passes on random index sets") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> idx_d(-6, 6);
  for (int t = 0; t < 20; ++t) {
    std::set<int> s;
    while (s.size() < 3) {
      int v = idx_d(rng);
      if (v != 0) s.insert(v);
    }
    CHECK(walsh_shift_check(WalshIndexSet(s.begin(), s.end()), 500, rng()));
  }
}

TEST_CASE("laguerre polynomials: explicit low orders") {
  CHECK(laguerre_poly(0) == LaguerrePoly{{mpq_class(1)}});
  CHECK(laguerre_poly(1) == LaguerrePoly{{mpq_class(1), mpq_class(-1)}});
  CHECK(laguerre_poly(2) ==
        LaguerrePoly{{mpq_class(1), mpq_class(-2), mpq_class(1, 2)}});
  CHECK(laguerre_poly(3) == LaguerrePoly{{mpq_class(1), mpq_class(-3),
                                          mpq_class(3, 2), mpq_class(-1, 6)}});
}

TEST_CASE("laguerre orthonormality via exact moments") {
  for (int m = 0; m <= 8; ++m)
    for (int n = 0; n <= 8; ++n)
      CHECK(laguerre_inner(laguerre_poly(m), laguerre_poly(n)) ==
            (m == n ? 1 : 0));
}

TEST_CASE("laguerre shift: integral formula and ladder identity") {
  // T x^2 = x^2 - x^3/3
  LaguerrePoly x_sq{{mpq_class(0), mpq_class(0), mpq_class(1)}};
  LaguerrePoly t = laguerre_shift(x_sq);
  CHECK(t == LaguerrePoly{{mpq_class(0), mpq_class(0), mpq_class(1),
                           mpq_class(-1, 3)}});
  for (int n = 0; n <= 15; ++n)
    CHECK(laguerre_shift(laguerre_poly(n)) == laguerre_poly(n + 1));
}

TEST_CASE("laguerre mean bound: exact certificate and sharpness") {
  std::map<int, mpq_class> coeffs = {{0, mpq_class(1, 2)},
                                     {2, mpq_class(-3)},
                                     {5, mpq_class(2, 7)}};
  for (long n : {1L, 8L, 64L}) {
    LaguerreMeanCheck c = laguerre_mean_check(coeffs, n);
    CHECK(c.verified);
    CHECK_FALSE(c.sharp);
  }
  LaguerreMeanCheck sharp = laguerre_mean_check({{3, mpq_class(5)}}, 16);
  CHECK(sharp.sharp);
  CHECK(sharp.verified);
  CHECK(sharp.lhs_sq == sharp.rhs_sq);
}

TEST_CASE("laguerre pointwise rate equals the slow polynomial iteration") {
  std::map<int, mpq_class> coeffs = {{0, mpq_class(1)},
                                     {1, mpq_class(-1, 2)},
                                     {4, mpq_class(3, 5)}};
  const mpq_class x(7, 10);
  std::vector<long> grid = geometric_grid(64);
  RateSeries fast = laguerre_pointwise_rate(coeffs, x, 0.5, grid);

  LaguerrePoly f;
  for (const auto& [m, cm] : coeffs) f = f + cm * laguerre_poly(m);
  LaguerrePoly cur = f;
  mpq_class sum = 0;
  long done = 0;
  std::vector<double> devs;
  for (long target : grid) {
    while (done < target) {
      sum += cur.eval(x);
      cur = laguerre_shift(cur);
      ++done;
    }
    devs.push_back(std::abs(mpq_class(sum / done).get_d()));
  }
  REQUIRE(fast.checkpoints.size() == devs.size());
  for (size_t i = 0; i < devs.size(); ++i)
    CHECK(fast.checkpoints[i].deviation == doctest::Approx(devs[i]).epsilon(1e-12));
}

TEST_CASE("baker rate series: exact partial sums match a direct simulation") {
  std::map<WalshIndexSet, mpq_class> coeffs = {
      {{1}, mpq_class(1)}, {{-1, 2}, mpq_class(-1, 2)}, {{-2, 3}, mpq_class(2, 3)}};
  std::mt19937_64 rng(59);
  DyadicPoint p = DyadicPoint::random(300, 40, rng);
  std::vector<long> grid = geometric_grid(256);
  RateSeries rs = baker_rate_series(coeffs, p, 0.5, grid);

  DyadicPoint cur = p;
  mpq_class sum = 0;
  long done = 0;
  size_t ci = 0;
  for (long target : grid) {
    while (done < target) {
      for (const auto& [idx, c] : coeffs) sum += c * walsh_eval(idx, cur);
      cur = baker_apply(cur);
      ++done;
    }
    const double dev = std::abs(mpq_class(sum / done).get_d());
    CHECK(rs.checkpoints[ci].n == done);
    CHECK(rs.checkpoints[ci].deviation == doctest::Approx(dev).epsilon(1e-12));
    ++ci;
  }
}
