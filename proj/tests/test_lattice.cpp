#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/int_matrix.hpp"
#include "core/lattice.hpp"
#include "core/quad_elem.hpp"

using namespace ergo;

namespace {

IntMatrix fib() { return IntMatrix::from_rows({{1, 1}, {1, 0}}); }
IntMatrix arnold() { return IntMatrix::from_rows({{2, 1}, {1, 1}}); }
IntMatrix doubling() { return IntMatrix::from_rows({{2, 0}, {0, 2}}); }
IntMatrix twist() { return IntMatrix::from_rows({{0, -1}, {2, 0}}); }

// membership of xi in A^k Z^2 by solving with the adjugate
bool in_sublattice(const IntMatrix& p, const std::vector<mpz_class>& xi) {
  IntMatrix adj = p.adjugate();
  mpz_class det = p.det();
  for (const auto& w : adj.apply(xi))
    if (!mpz_divisible_p(w.get_mpz_t(), det.get_mpz_t())) return false;
  return true;
}

mpz_class brute_shortest_sq(const IntMatrix& p, long bound) {
  mpz_class best = -1;
  for (long x = -bound; x <= bound; ++x)
    for (long y = -bound; y <= bound; ++y) {
      if (x == 0 && y == 0) continue;
      std::vector<mpz_class> v = {mpz_class(x), mpz_class(y)};
      if (!in_sublattice(p, v)) continue;
      mpz_class n = norm_sq(v);
      if (best < 0 || n < best) best = n;
    }
  return best;
}

}  // namespace

TEST_CASE("char poly, det, trace, adjugate") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix a(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a.at(i, j) = d(rng);
    // 2x2 oracle
    mpz_class det = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    CHECK(a.det() == det);
    CHECK(a.trace() == a.at(0, 0) + a.at(1, 1));
    auto cp = a.char_poly();  // x^2 + c1 x + c0
    CHECK(cp[0] == det);
    CHECK(cp[1] == -a.trace());
    // A * adj(A) == det * I
    IntMatrix prod = a * a.adjugate();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(prod.at(i, j) == (i == j ? det : mpz_class(0)));
  }
}

TEST_CASE("char poly 3x3 oracle") {
  IntMatrix a = IntMatrix::from_rows({{1, 2, 0}, {0, 1, 3}, {4, 0, 1}});
  // det by cofactor expansion = 1*(1-0) - 2*(0-12) + 0 = 25
  CHECK(a.det() == 25);
  auto cp = a.char_poly();
  CHECK(cp.size() == 4);       // x^3 + c2 x^2 + c1 x + c0
  CHECK(cp[2] == -a.trace());  // -3
  CHECK(cp[0] == -a.det());    // (-1)^3 det
}

TEST_CASE("quad elem arithmetic in Q(sqrt 5)") {
  // golden ratio phi = (1 + sqrt5)/2 satisfies phi^2 = phi + 1
  QuadElem phi(mpq_class(1, 2), mpq_class(1, 2), 5);
  CHECK(phi * phi == phi + QuadElem(mpq_class(1)));
  CHECK(phi * phi.inverse() == QuadElem(mpq_class(1)));
  CHECK(phi.sign() > 0);
  CHECK(phi.conj().sign() < 0);  // (1 - sqrt5)/2 < 0
  // 3 - 2 sqrt2 > 0 but barely: exact sign must not use doubles
  QuadElem tight(mpq_class(3), mpq_class(-2), 2);
  CHECK(tight.sign() > 0);
  QuadElem neg(mpq_class(3), mpq_class(-2), 3);  // 3 - 2 sqrt3 < 0
  CHECK(neg.sign() < 0);
}

TEST_CASE("classification of standard matrices") {
  CHECK(classify(fib()).tag == SpectralTag::ErgodicBilateral);
  CHECK(classify(arnold()).tag == SpectralTag::ErgodicBilateral);
  CHECK(classify(doubling()).tag == SpectralTag::ErgodicUnilateral);
  CHECK(classify(twist()).tag == SpectralTag::ErgodicUnilateral);
  // rotation by 90 degrees: eigenvalues +-i
  CHECK(classify(IntMatrix::from_rows({{0, -1}, {1, 0}})).tag ==
        SpectralTag::RootOfUnityPresent);
  // unipotent: eigenvalue 1
  CHECK(classify(IntMatrix::from_rows({{1, 1}, {0, 1}})).tag ==
        SpectralTag::RootOfUnityPresent);
  // swap: eigenvalues +-1
  CHECK(classify(IntMatrix::from_rows({{0, 1}, {1, 0}})).tag ==
        SpectralTag::RootOfUnityPresent);
  // sixth root of unity: x^2 - x + 1
  CHECK(classify(IntMatrix::from_rows({{1, -1}, {1, 0}})).tag ==
        SpectralTag::RootOfUnityPresent);
  CHECK(classify(IntMatrix::from_rows({{1, 1}, {2, 2}})).tag ==
        SpectralTag::Singular);
  // complex non-root-of-unity eigenvalues, |det| > 1
  CHECK(classify(IntMatrix::from_rows({{1, -2}, {1, 1}})).tag ==
        SpectralTag::ErgodicUnilateral);
}

TEST_CASE("classification is a similarity invariant under transpose") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a.at(i, j) = d(rng);
    CHECK(classify(a).tag == classify(a.transpose()).tag);
  }
}

TEST_CASE("diagonalizer sup norm is genuinely a norm on the lattice") {
  Diagonalizer dg = diagonalizer(fib());
  CHECK(dg.lambda.abs().to_double() > 1.0);
  CHECK(dg.sup_norm({mpz_class(0), mpz_class(0)}).sign() == 0);
  for (long x = -5; x <= 5; ++x)
    for (long y = -5; y <= 5; ++y) {
      if (x == 0 && y == 0) continue;
      CHECK(dg.sup_norm({mpz_class(x), mpz_class(y)}).sign() > 0);
    }
}

TEST_CASE("orbit representative: idempotence and equivariance") {
  for (const IntMatrix& a : {fib(), arnold()}) {
    for (long x = -6; x <= 6; ++x)
      for (long y = -6; y <= 6; ++y) {
        if (x == 0 && y == 0) continue;
        std::vector<mpz_class> xi = {mpz_class(x), mpz_class(y)};
        OrbitRep r = orbit_representative(a, xi);
        OrbitRep rr = orbit_representative(a, r.representative);
        CHECK(rr.offset == 0);
        CHECK(rr.representative == r.representative);
        OrbitRep shifted = orbit_representative(a, a.apply(xi));
        CHECK(shifted.representative == r.representative);
        CHECK(shifted.offset == r.offset + 1);
      }
  }
}

TEST_CASE("shell index for the doubling map") {
  IntMatrix a = doubling();
  CHECK(shell_index(a, {mpz_class(1), mpz_class(0)}) == 0);
  CHECK(shell_index(a, {mpz_class(3), mpz_class(5)}) == 0);
  CHECK(shell_index(a, {mpz_class(2), mpz_class(6)}) == 1);
  CHECK(shell_index(a, {mpz_class(4), mpz_class(8)}) == 2);
  CHECK(shell_index(a, {mpz_class(8), mpz_class(0)}) == 3);
}

TEST_CASE("shell partition covers a punctured ball exactly once") {
  for (const IntMatrix& a : {fib(), twist()}) {
    ShellPartition shells(a);
    IntMatrix at = a.transpose();
    for (long x = -8; x <= 8; ++x)
      for (long y = -8; y <= 8; ++y) {
        if (x == 0 && y == 0) continue;
        std::vector<mpz_class> xi = {mpz_class(x), mpz_class(y)};
        long k = shells.shell_of(xi);
        if (shells.bilateral()) {
          CHECK(k == orbit_representative(at, xi).offset);
        } else {
          // xi in (A*)^k Z^2 but not (A*)^{k+1} Z^2
          IntMatrix p = IntMatrix::identity(2);
          for (long i = 0; i < k; ++i) p = p * at;
          CHECK(in_sublattice(p, xi));
          CHECK_FALSE(in_sublattice(p * at, xi));
        }
      }
  }
}

TEST_CASE("delta growth against brute force") {
  for (const IntMatrix& a : {doubling(), twist(),
                             IntMatrix::from_rows({{1, -2}, {1, 1}})}) {
    std::vector<mpz_class> deltas = delta_growth(a, 4);
    for (int k = 0; k <= 4; ++k) {
      IntMatrix p = IntMatrix::identity(2);
      for (int i = 0; i < k; ++i) p = p * a;
      long bound = 2 + static_cast<long>(
                           std::ceil(2.0 * std::sqrt(deltas[k].get_d())));
      CHECK(deltas[k] == brute_shortest_sq(p, bound));
    }
  }
}

TEST_CASE("delta growth rejects the bilateral case") {
  CHECK_THROWS_AS(delta_growth(fib(), 3), CaseNotApplicable);
}

TEST_CASE("rep growth: positive constant and exact comparability") {
  RepGrowthTable t = rep_growth(fib(), 8, 10);
  CHECK(t.fitted_c > 0.0);
  CHECK(t.comparability_ok);
  CHECK(t.lambda_abs == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));
  for (const auto& row : t.rows) CHECK(row.norm_sq > 0);
}

TEST_CASE("dirichlet bound: strictly positive minimum") {
  for (const IntMatrix& a : {fib(), arnold()}) {
    DirichletTable dt = dirichlet_bound(a, 12);
    CHECK(dt.min_product_sq.sign() > 0);
    for (const auto& row : dt.rows) CHECK(row.product_sq.sign() > 0);
  }
}

TEST_CASE("svp fit finds exponential growth") {
  std::vector<std::vector<mpz_class>> sample;
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y)
      if (x != 0 || y != 0) sample.push_back({mpz_class(x), mpz_class(y)});
  SvpFit fit = verify_svp(fib(), sample, 10);
  CHECK(fit.ok);
  CHECK(fit.q > 1.0);
  CHECK(fit.c > 0.0);
}
