#include "core/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace ergo {

namespace {

constexpr long kOrbitWalkCap = 10000;

// Natural log of a positive mpz, safe for values beyond double range.
double ln_mpz(const mpz_class& n) {
  signed long exp2;
  double d = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(d) + static_cast<double>(exp2) * std::numbers::ln2;
}

// x^n - 1 as a coefficient vector (index = degree).
std::vector<mpz_class> xn_minus_1(int n) {
  std::vector<mpz_class> p(static_cast<size_t>(n) + 1);
  p[0] = -1;
  p[n] = 1;
  return p;
}

// Exact division of polynomials over Z; returns quotient, requires the
// division to be exact.
std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> num,
                                      const std::vector<mpz_class>& den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  std::vector<mpz_class> q(static_cast<size_t>(dn - dd) + 1);
  for (int i = dn - dd; i >= 0; --i) {
    mpz_class c = num[i + dd] / den[dd];
    q[i] = c;
    for (int j = 0; j <= dd; ++j) num[i + j] -= c * den[j];
  }
  for (const auto& r : num)
    if (r != 0) throw std::logic_error("poly_div_exact: remainder");
  return q;
}

// True iff den divides num over Z (den monic).
bool poly_divides(const std::vector<mpz_class>& den, std::vector<mpz_class> num) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  if (dd > dn) return false;
  for (int i = dn - dd; i >= 0; --i) {
    mpz_class c = num[i + dd];
    for (int j = 0; j <= dd; ++j) num[i + j] -= c * den[j];
  }
  return std::all_of(num.begin(), num.end(),
                     [](const mpz_class& r) { return r == 0; });
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

// Cyclotomic polynomial Phi_n via recursive exact division.
std::vector<mpz_class> cyclotomic(int n) {
  std::vector<mpz_class> p = xn_minus_1(n);
  for (int m = 1; m < n; ++m)
    if (n % m == 0) p = poly_div_exact(std::move(p), cyclotomic(m));
  return p;
}

std::vector<mpz_class> matrix_inverse_unimodular_apply(const IntMatrix& adj,
                                                       const mpz_class& det,
                                                       const std::vector<mpz_class>& v) {
  std::vector<mpz_class> r = adj.apply(v);
  if (det == -1)
    for (auto& x : r) x = -x;
  return r;
}

bool lex_less(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace

const char* to_string(SpectralTag t) {
  switch (t) {
    case SpectralTag::RootOfUnityPresent: return "RootOfUnityPresent";
    case SpectralTag::ErgodicBilateral: return "ErgodicBilateral";
    case SpectralTag::ErgodicUnilateral: return "ErgodicUnilateral";
    case SpectralTag::Singular: return "Singular";
  }
  return "?";
}

mpz_class norm_sq(const std::vector<mpz_class>& v) {
  mpz_class s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

SpectralClass classify(const IntMatrix& a) {
  SpectralClass sc;
  sc.det = a.det();
  sc.trace = a.trace();
  if (sc.det == 0) {
    sc.tag = SpectralTag::Singular;
    return sc;
  }
  const int d = a.dim();
  if (d == 2) {
    mpz_class disc = sc.trace * sc.trace - 4 * sc.det;
    if (disc > 0) {
      sc.real_eigenvalues = true;
      sc.disc = squarefree_split(disc).squarefree;
    }
  }
  // A root-of-unity eigenvalue means the characteristic polynomial has a
  // cyclotomic factor Phi_n, necessarily with phi(n) <= d.
  std::vector<mpz_class> cp = a.char_poly();
  bool root_of_unity = false;
  for (int n = 1; n <= 2 * d * d && !root_of_unity; ++n)
    if (euler_phi(n) <= d && poly_divides(cyclotomic(n), cp))
      root_of_unity = true;
  if (root_of_unity)
    sc.tag = SpectralTag::RootOfUnityPresent;
  else if (sc.det == 1 || sc.det == -1)
    sc.tag = SpectralTag::ErgodicBilateral;
  else
    sc.tag = SpectralTag::ErgodicUnilateral;
  return sc;
}

QuadElem Diagonalizer::sup_norm(const std::vector<mpz_class>& xi) const {
  QuadElem r0 = (s[0][0] * QuadElem(mpq_class(xi[0])) +
                 s[0][1] * QuadElem(mpq_class(xi[1]))).abs();
  QuadElem r1 = (s[1][0] * QuadElem(mpq_class(xi[0])) +
                 s[1][1] * QuadElem(mpq_class(xi[1]))).abs();
  return r0 < r1 ? r1 : r0;
}

namespace {

// Exact eigenvalue (t + sgn * s * sqrt(D)) / 2 of a 2x2 matrix.
QuadElem eigenvalue_branch(const mpz_class& tr, const mpz_class& s, long disc,
                           int sign) {
  return QuadElem(mpq_class(tr) / 2, mpq_class(sign * mpq_class(s)) / 2, disc);
}

// Exact left eigenvector row for eigenvalue e: row * A = e * row.
std::array<QuadElem, 2> left_eigen_row(const IntMatrix& a, const QuadElem& e) {
  if (a.at(1, 0) != 0)
    return {QuadElem(mpq_class(a.at(1, 0))),
            e - QuadElem(mpq_class(a.at(0, 0)))};
  if (a.at(0, 1) != 0)
    return {e - QuadElem(mpq_class(a.at(1, 1))),
            QuadElem(mpq_class(a.at(0, 1)))};
  throw CaseNotApplicable("diagonalizer: diagonal matrix has integer eigenvalues");
}

}  // namespace

Diagonalizer diagonalizer(const IntMatrix& a) {
  if (a.dim() != 2)
    throw CaseNotApplicable("diagonalizer: only d = 2 supported");
  SpectralClass sc = classify(a);
  if (sc.tag != SpectralTag::ErgodicBilateral)
    throw NonErgodicMatrix("diagonalizer: matrix is not ergodic with |det| = 1");
  mpz_class disc_full = sc.trace * sc.trace - 4 * sc.det;
  if (disc_full <= 0)
    throw CaseNotApplicable("diagonalizer: complex eigenvalue pair");
  SquarefreeSplit sp = squarefree_split(disc_full);

  QuadElem lam_plus = eigenvalue_branch(sc.trace, sp.square_root, sp.squarefree, +1);
  QuadElem lam_minus = eigenvalue_branch(sc.trace, sp.square_root, sp.squarefree, -1);
  QuadElem one(mpq_class(1));
  QuadElem lambda = lam_plus.abs() > one ? lam_plus : lam_minus;
  QuadElem mu = lam_plus.abs() > one ? lam_minus : lam_plus;

  Diagonalizer dg;
  dg.disc = sp.squarefree;
  dg.lambda = lambda;
  dg.mu = mu;
  auto row_mu = left_eigen_row(a, mu);
  auto row_lam = left_eigen_row(a, lambda);
  dg.s[0][0] = row_mu[0];
  dg.s[0][1] = row_mu[1];
  dg.s[1][0] = row_lam[0];
  dg.s[1][1] = row_lam[1];
  return dg;
}

OrbitRep orbit_representative(const IntMatrix& a, const std::vector<mpz_class>& xi) {
  if (a.dim() != 2)
    throw CaseNotApplicable("orbit_representative: only d = 2 supported");
  if (norm_sq(xi) == 0)
    throw LatticeError("orbit_representative: xi must be nonzero");
  SpectralClass sc = classify(a);
  if (sc.tag != SpectralTag::ErgodicBilateral)
    throw NonErgodicMatrix("orbit_representative: requires |det| = 1 ergodic matrix");
  Diagonalizer dg = diagonalizer(a);
  IntMatrix adj = a.adjugate();
  mpz_class det = sc.det;

  std::vector<mpz_class> best = xi;
  QuadElem best_norm = dg.sup_norm(xi);
  long best_pos = 0;

  auto consider = [&](const std::vector<mpz_class>& v, long pos) {
    QuadElem n = dg.sup_norm(v);
    int c = n < best_norm ? -1 : (n == best_norm ? 0 : 1);
    if (c < 0 || (c == 0 && lex_less(v, best))) {
      best = v;
      best_norm = n;
      best_pos = pos;
    }
  };

  for (int dir : {+1, -1}) {
    std::vector<mpz_class> cur = xi;
    QuadElem prev = best_norm;
    int increases = 0;
    for (long step = 1; step <= kOrbitWalkCap; ++step) {
      cur = dir > 0 ? a.apply(cur)
                    : matrix_inverse_unimodular_apply(adj, det, cur);
      QuadElem n = dg.sup_norm(cur);
      consider(cur, dir * step);
      if (n > prev && n > best_norm)
        ++increases;
      else
        increases = 0;
      prev = n;
      if (increases >= 2) break;
      if (step == kOrbitWalkCap)
        throw LatticeError("orbit_representative: walk cap exceeded");
    }
  }
  OrbitRep rep;
  rep.representative = best;
  rep.offset = -best_pos;  // xi = A^{offset} * representative
  rep.s_norm = best_norm;
  return rep;
}

long shell_index(const IntMatrix& a, const std::vector<mpz_class>& xi) {
  mpz_class det = a.det();
  if (det == 0) throw LatticeError("shell_index: singular matrix");
  if (det == 1 || det == -1)
    throw UnimodularMatrix("shell_index: |det| = 1; use orbit_representative");
  if (norm_sq(xi) == 0) throw LatticeError("shell_index: xi must be nonzero");
  IntMatrix at = a.transpose();
  IntMatrix adj = at.adjugate();
  std::vector<mpz_class> y = xi;
  for (long k = 0;; ++k) {
    if (k > kOrbitWalkCap)
      throw LatticeError("shell_index: no maximal shell (non-ergodic matrix?)");
    std::vector<mpz_class> z = adj.apply(y);
    bool divisible = true;
    for (auto& zi : z) {
      if (!mpz_divisible_p(zi.get_mpz_t(), det.get_mpz_t())) {
        divisible = false;
        break;
      }
    }
    if (!divisible) return k;
    for (size_t i = 0; i < z.size(); ++i) y[i] = z[i] / det;
  }
}

ShellPartition::ShellPartition(const IntMatrix& a)
    : adjoint_(a.transpose()),
      bilateral_(a.det() == 1 || a.det() == -1) {
  if (a.det() == 0) throw LatticeError("ShellPartition: singular matrix");
}

long ShellPartition::shell_of(const std::vector<mpz_class>& xi) const {
  if (bilateral_) return orbit_representative(adjoint_, xi).offset;
  return shell_index(adjoint_.transpose(), xi);
}

mpz_class shortest_vector_sq(const IntMatrix& b) {
  if (b.dim() != 2)
    throw LatticeError("shortest_vector_sq: only d = 2 supported");
  std::vector<mpz_class> u = {b.at(0, 0), b.at(1, 0)};
  std::vector<mpz_class> v = {b.at(0, 1), b.at(1, 1)};
  // Lagrange reduction: on exit u is a shortest nonzero lattice vector.
  for (;;) {
    if (norm_sq(v) < norm_sq(u)) std::swap(u, v);
    mpz_class nu = norm_sq(u);
    if (nu == 0) throw LatticeError("shortest_vector_sq: rank-deficient basis");
    mpz_class dot = u[0] * v[0] + u[1] * v[1];
    // nearest integer to dot / nu
    mpz_class m;
    mpz_class num = 2 * dot + nu;
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), mpz_class(2 * nu).get_mpz_t());
    if (m == 0) break;
    v[0] -= m * u[0];
    v[1] -= m * u[1];
  }
  return std::min(norm_sq(u), norm_sq(v));
}

std::vector<mpz_class> delta_growth(const IntMatrix& a, int k_max) {
  if (a.dim() != 2) throw LatticeError("delta_growth: only d = 2 supported");
  SpectralClass sc = classify(a);
  if (sc.tag != SpectralTag::ErgodicUnilateral)
    throw CaseNotApplicable(
        "delta_growth: requires |det| > 1 and no root-of-unity eigenvalue");
  std::vector<mpz_class> out;
  IntMatrix p = IntMatrix::identity(2);
  for (int k = 0; k <= k_max; ++k) {
    out.push_back(shortest_vector_sq(p));
    p = p * a;
  }
  return out;
}

RepGrowthTable rep_growth(const IntMatrix& a, long ball_radius, int k_max) {
  Diagonalizer dg = diagonalizer(a);
  IntMatrix adj = a.adjugate();
  mpz_class det = a.det();
  const double lam = std::abs(dg.lambda.to_double());

  std::set<std::vector<std::string>> seen;
  std::vector<std::vector<mpz_class>> reps;
  for (long x = -ball_radius; x <= ball_radius; ++x)
    for (long y = -ball_radius; y <= ball_radius; ++y) {
      if (x == 0 && y == 0) continue;
      OrbitRep r = orbit_representative(a, {mpz_class(x), mpz_class(y)});
      std::vector<std::string> key = {r.representative[0].get_str(),
                                      r.representative[1].get_str()};
      if (seen.insert(key).second) reps.push_back(r.representative);
    }

  RepGrowthTable table;
  table.lambda_abs = lam;
  table.fitted_c = std::numeric_limits<double>::infinity();
  table.comparability_ok = true;

  QuadElem lambda_abs_exact = dg.lambda.abs();
  for (const auto& rep : reps) {
    // comparability of the eigencoordinates: min |eta_i| * |lambda| >= |eta|_inf
    QuadElem e0 = (dg.s[0][0] * QuadElem(mpq_class(rep[0])) +
                   dg.s[0][1] * QuadElem(mpq_class(rep[1]))).abs();
    QuadElem e1 = (dg.s[1][0] * QuadElem(mpq_class(rep[0])) +
                   dg.s[1][1] * QuadElem(mpq_class(rep[1]))).abs();
    QuadElem mn = e0 < e1 ? e0 : e1;
    QuadElem mx = e0 < e1 ? e1 : e0;
    if (mn * lambda_abs_exact < mx) table.comparability_ok = false;

    std::vector<mpz_class> fwd = rep;
    std::vector<mpz_class> bwd = rep;
    for (int k = 0; k <= k_max; ++k) {
      table.rows.push_back({rep, k, norm_sq(fwd)});
      if (k > 0) table.rows.push_back({rep, -k, norm_sq(bwd)});
      fwd = a.apply(fwd);
      bwd = matrix_inverse_unimodular_apply(adj, det, bwd);
    }
  }
  for (const auto& row : table.rows) {
    double c = std::exp(0.5 * ln_mpz(row.norm_sq) -
                        std::abs(static_cast<double>(row.k)) * std::log(lam));
    table.fitted_c = std::min(table.fitted_c, c);
  }
  return table;
}

DirichletTable dirichlet_bound(const IntMatrix& a, long ball_radius) {
  if (a.dim() != 2) throw LatticeError("dirichlet_bound: only d = 2 supported");
  mpz_class tr = a.trace();
  mpz_class det = a.det();
  mpz_class disc_full = tr * tr - 4 * det;
  if (disc_full <= 0)
    throw RationalEigenvalue("dirichlet_bound: no real eigenvalue pair");
  SquarefreeSplit sp = squarefree_split(disc_full);
  if (sp.squarefree == 1)
    throw RationalEigenvalue("dirichlet_bound: eigenvalues are rational");
  QuadElem lam_plus = eigenvalue_branch(tr, sp.square_root, sp.squarefree, +1);
  QuadElem lam_minus = eigenvalue_branch(tr, sp.square_root, sp.squarefree, -1);
  QuadElem lambda = lam_plus.abs() > lam_minus.abs() ? lam_plus : lam_minus;

  // Right eigenvector spanning V_lambda.
  QuadElem w0, w1;
  if (a.at(0, 1) != 0) {
    w0 = QuadElem(mpq_class(a.at(0, 1)));
    w1 = lambda - QuadElem(mpq_class(a.at(0, 0)));
  } else if (a.at(1, 0) != 0) {
    w0 = lambda - QuadElem(mpq_class(a.at(1, 1)));
    w1 = QuadElem(mpq_class(a.at(1, 0)));
  } else {
    throw RationalEigenvalue("dirichlet_bound: diagonal matrix");
  }
  QuadElem w_sq = w0 * w0 + w1 * w1;

  DirichletTable out;
  bool first = true;
  for (long x = -ball_radius; x <= ball_radius; ++x)
    for (long y = -ball_radius; y <= ball_radius; ++y) {
      if (x == 0 && y == 0) continue;
      QuadElem xi0{mpq_class(x)};
      QuadElem xi1{mpq_class(y)};
      QuadElem nsq = xi0 * xi0 + xi1 * xi1;
      QuadElem dot = xi0 * w0 + xi1 * w1;
      QuadElem dist_sq = nsq - dot * dot / w_sq;
      QuadElem prod = nsq * dist_sq;
      out.rows.push_back({{mpz_class(x), mpz_class(y)}, prod});
      if (first || prod < out.min_product_sq) {
        out.min_product_sq = prod;
        first = false;
      }
    }
  return out;
}

SvpFit verify_svp(const IntMatrix& a,
                  const std::vector<std::vector<mpz_class>>& sample, int k_max) {
  mpz_class det = a.det();
  if (det == 0) throw LatticeError("verify_svp: singular matrix");
  const bool bilateral = (det == 1 || det == -1);
  IntMatrix adj = a.adjugate();

  // l[m] = min over the sample of log |A^k xi| with |k| = m.
  std::vector<double> l(static_cast<size_t>(k_max) + 1,
                        std::numeric_limits<double>::infinity());
  for (const auto& xi : sample) {
    if (norm_sq(xi) == 0) continue;
    std::vector<mpz_class> fwd = xi;
    std::vector<mpz_class> bwd = xi;
    for (int m = 0; m <= k_max; ++m) {
      double v = 0.5 * ln_mpz(norm_sq(fwd));
      if (bilateral && m > 0)
        v = std::min(v, 0.5 * ln_mpz(norm_sq(bwd)));
      l[m] = std::min(l[m], v);
      fwd = a.apply(fwd);
      if (bilateral) bwd = matrix_inverse_unimodular_apply(adj, det, bwd);
    }
  }
  SvpFit fit{0.0, 0.0, false};
  if (std::isinf(l[0])) return fit;
  // Transient dips at small m are allowed; the exponential certificate is
  // fitted on the upper half of the range.
  const int m_lo = k_max / 2;
  double slope = std::numeric_limits<double>::infinity();
  for (int m1 = m_lo; m1 <= k_max; ++m1)
    for (int m2 = m1 + 1; m2 <= k_max; ++m2)
      slope = std::min(slope, (l[m2] - l[m1]) / (m2 - m1));
  fit.q = std::exp(slope);
  fit.ok = fit.q > 1.0;
  double log_q = fit.ok ? slope : 0.0;
  double log_c = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= k_max; ++m) log_c = std::min(log_c, l[m] - m * log_q);
  fit.c = std::exp(log_c);
  return fit;
}

}  // namespace ergo
