#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/shift.hpp"
#include "core/weights.hpp"

using namespace ergo;

namespace {

CoeffVector random_vector(std::mt19937_64& rng, bool bilateral) {
  CoeffVector v;
  v.kind = bilateral ? CoeffVector::Kind::Bilateral : CoeffVector::Kind::Unilateral;
  std::uniform_int_distribution<int> n(1, 12);
  std::uniform_int_distribution<long> j(0, 3);
  std::uniform_int_distribution<long> k(bilateral ? -10 : 0, 10);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 5);
  const int count = n(rng);
  for (int i = 0; i < count; ++i) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    v.set(j(rng), k(rng), q);
  }
  return v;
}

// numeric norm of U_N v - fixed, via the definition (dense double arithmetic)
double numeric_mean_norm(const CoeffVector& v, long n) {
  std::map<std::pair<long, long>, double> acc;
  CoeffVector cur = v;
  for (long i = 0; i < n; ++i) {
    for (const auto& [jk, a] : cur.amps) acc[jk] += a.get_d() / n;
    if (i + 1 < n) cur = apply_shift(cur);
  }
  double s = 0.0;
  for (const auto& [jk, a] : acc) s += a * a;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("shift moves basis vectors and preserves the fixed part") {
  CoeffVector v;
  v.kind = CoeffVector::Kind::Bilateral;
  v.set(2, -3, mpq_class(7));
  v.fixed_part = mpq_class(1, 2);
  CoeffVector w = apply_shift(v);
  CHECK(w.amps.at({2, -2}) == 7);
  CHECK(w.fixed_part == mpq_class(1, 2));
  CHECK(w.norm_sq() == v.norm_sq());
}

TEST_CASE("unilateral vectors reject negative shell indices") {
  CoeffVector v;
  v.kind = CoeffVector::Kind::Unilateral;
  CHECK_THROWS(v.set(0, -1, mpq_class(1)));
}

TEST_CASE("ergodic mean of a single basis vector spreads uniformly") {
  CoeffVector v;
  v.kind = CoeffVector::Kind::Unilateral;
  v.set(1, 4, mpq_class(3));
  const long n = 8;
  CoeffVector m = ergodic_mean(v, n);
  CHECK(static_cast<long>(m.amps.size()) == n);
  for (long k = 4; k < 4 + n; ++k) CHECK(m.amps.at({1, k}) == mpq_class(3, n));
}

TEST_CASE("projection norms partition the squared norm") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    CoeffVector v = random_vector(rng, t % 2 == 0);
    auto norms = projection_norms_sq(v);
    mpq_class total = 0;
    for (const auto& [k, s] : norms) total += s;
    CHECK(total + v.fixed_part * v.fixed_part == v.norm_sq());
  }
}

TEST_CASE("norm bound: exact lhs agrees with the numeric definition") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 30; ++t) {
    CoeffVector v = random_vector(rng, t % 2 == 0);
    for (long n : {1L, 2L, 7L, 32L}) {
      NormBoundResult r = norm_bound_check(v, n);
      CHECK(r.verified);
      CHECK(r.lhs == doctest::Approx(numeric_mean_norm(v, n)).epsilon(1e-9));
      CHECK(r.lhs <= r.rhs * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("norm bound is sharp on a single shell") {
  CoeffVector v;
  v.kind = CoeffVector::Kind::Bilateral;
  v.set(0, 5, mpq_class(2));
  v.set(3, 5, mpq_class(-1, 3));
  for (long n : {1L, 4L, 100L}) {
    NormBoundResult r = norm_bound_check(v, n);
    CHECK(r.sharp);
    CHECK(r.verified);
    // ||U_N f|| = N^{-1/2} ||f|| exactly for a single shell
    CHECK(r.lhs_sq == v.norm_sq() / n);
  }
}

TEST_CASE("banach witness ratio against direct enumeration") {
  for (long h : {1L, 5L, 20L}) {
    for (long n : {2L, 4L, 7L}) {
      // f = sum_{k<=h} phi_{0,k}; U_N f coefficient at K counts pairs k+j=K
      std::map<long, long> w;
      for (long k = 0; k <= h; ++k)
        for (long j = 0; j < n; ++j) w[k + j] += 1;
      mpq_class num = 0;
      for (const auto& [K, c] : w) num += mpq_class(c) * c;
      mpq_class expected = num / (mpq_class(n) * n * (h + 1));
      CHECK(banach_witness_ratio_sq(h, n) == expected);
    }
  }
}

TEST_CASE("banach witness ratio approaches one for fixed N") {
  mpq_class prev = 0;
  for (long h : {10L, 100L, 1000L, 10000L}) {
    mpq_class r = banach_witness_ratio_sq(h, 4);
    CHECK(r > prev);
    prev = r;
  }
  CHECK(prev.get_d() > 0.999 * 0.999);
}

TEST_CASE("weighted maximal pair against direct enumeration") {
  WeightFunction eps = WeightFunction::power_log(0.5, 1.5, 0.1);
  std::vector<double> s = {1, -1, -1, 1, 1, 1, -1, 1};
  MaximalPair mp = weighted_maximal_pair(s, eps);
  double s_max = 0, st_max = 0;
  double ps = 0, pst = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    ps += s[i];
    pst += eps.eval(static_cast<double>(i)) * s[i];
    s_max = std::max(s_max, eps.eval(static_cast<double>(i + 1)) * std::abs(ps));
    st_max = std::max(st_max, std::abs(pst));
  }
  CHECK(mp.s_value == doctest::Approx(s_max));
  CHECK(mp.s_tilde_value == doctest::Approx(st_max));
  CHECK(mp.comparison_ok);
}

TEST_CASE("maximal comparison on random sign sequences") {
  std::mt19937_64 rng(5);
  WeightFunction eps = WeightFunction::power_log(0.5, 1.5, 0.1);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> s(500);
    for (auto& v : s) v = (rng() & 1) ? 1.0 : -1.0;
    CHECK(weighted_maximal_pair(s, eps).comparison_ok);
  }
}

TEST_CASE("rm rhs convergence flags") {
  CHECK(rm_rhs(WeightFunction::power_log(0.5, 1.5, 0.1), 1000).convergent);
  CHECK_FALSE(rm_rhs(WeightFunction::power_log(0.5, 1.5, 0.0), 1000).convergent);
  CHECK(rm_rhs(WeightFunction::power_log(0.6, 0.0, 0.0), 1000).convergent);
  CHECK_FALSE(rm_rhs(WeightFunction::constant(1.0), 1000).convergent);
}

TEST_CASE("kronecker limit: Cesaro means from weighted sums") {
  // a_n = 1, b_n = n+1: b_N^{-1} sum b_n a_n = (sum_{n<N} (n+1)) / N
  std::vector<mpq_class> a(100, mpq_class(1));
  std::vector<mpq_class> b;
  for (int i = 0; i < 100; ++i) b.emplace_back(i + 1);
  mpq_class v = kronecker_limit(a, b, 100);
  mpq_class expected(100 * 101 / 2, 100);
  expected.canonicalize();
  CHECK(v == expected);
}
