#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "core/torus.hpp"

namespace ergo {

/// Polynomial with exact rational coefficients in the monomial basis;
/// c[k] multiplies x^k.
struct LaguerrePoly {
  std::vector<mpq_class> c;

  int degree() const;
  void trim();
  bool operator==(const LaguerrePoly& o) const;
  mpq_class eval(const mpq_class& x) const;
};

LaguerrePoly operator+(const LaguerrePoly& a, const LaguerrePoly& b);
LaguerrePoly operator*(const mpq_class& s, const LaguerrePoly& p);

/// L_n(x) = sum_k binom(n,k) (-1)^k / k! x^k, exact.
LaguerrePoly laguerre_poly(int n);

/// Tf(x) = f(x) - int_0^x f(y) dy, exact on polynomials.
LaguerrePoly laguerre_shift(const LaguerrePoly& p);

/// Exact L^2(e^{-x} dx) pairing via the moments int x^k e^{-x} dx = k!.
mpq_class laguerre_inner(const LaguerrePoly& a, const LaguerrePoly& b);

struct LaguerreMeanCheck {
  mpq_class lhs_sq;  // ||U_N f||^2, exact (moment pairing of the U_N polynomial)
  mpq_class rhs_sq;  // (sum_n |c_n|)^2 / N, exact
  bool verified;     // lhs_sq <= rhs_sq, exact comparison
  bool sharp;        // single-coefficient input: lhs_sq == rhs_sq
};

/// Norm bound instantiated on the Laguerre shift for f = sum c_n L_n.
LaguerreMeanCheck laguerre_mean_check(const std::map<int, mpq_class>& coeffs,
                                      long n);

/// Weighted pointwise series |U_N f(x)| along the shift orbit, exact
/// polynomial iteration and exact evaluation at rational x.
RateSeries laguerre_pointwise_rate(const std::map<int, mpq_class>& coeffs,
                                   const mpq_class& x, double eta,
                                   const std::vector<long>& grid);

}  // namespace ergo
