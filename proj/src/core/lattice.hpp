#pragma once

#include <optional>
#include <vector>

#include "core/int_matrix.hpp"
#include "core/quad_elem.hpp"

namespace ergo {

enum class SpectralTag {
  RootOfUnityPresent,
  ErgodicBilateral,   // |det| == 1, no eigenvalue a root of unity
  ErgodicUnilateral,  // |det| > 1, no eigenvalue a root of unity
  Singular,
};

const char* to_string(SpectralTag t);

struct SpectralClass {
  SpectralTag tag;
  mpz_class det;
  mpz_class trace;
  // d = 2 with real irrational eigenvalues: exact eigenvalue data.
  bool real_eigenvalues = false;
  long disc = 1;  // square-free part of the eigenvalue discriminant
};

struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonErgodicMatrix : LatticeError {
  using LatticeError::LatticeError;
};
struct UnimodularMatrix : LatticeError {
  using LatticeError::LatticeError;
};
struct CaseNotApplicable : LatticeError {
  using LatticeError::LatticeError;
};
struct RationalEigenvalue : LatticeError {
  using LatticeError::LatticeError;
};

/// Spectral classification of an integer matrix. For d = 2 the
/// root-of-unity test reduces to exact trace/determinant criteria; for
/// general d the characteristic polynomial is tested for cyclotomic
/// factors of order n with phi(n) <= d.
SpectralClass classify(const IntMatrix& a);

/// 2x2 left-diagonalization S A = D S over Q(sqrt(disc)), with
/// D = diag(mu, lambda), |lambda| > 1 > |mu|. Rows of S are exact left
/// eigenvectors. Requires ErgodicBilateral class with real eigenvalues.
struct Diagonalizer {
  QuadElem s[2][2];
  QuadElem mu, lambda;  // lambda labeled so |lambda| > 1
  long disc;

  /// |S xi|_inf as an exact field element (xi integer vector).
  QuadElem sup_norm(const std::vector<mpz_class>& xi) const;
};
Diagonalizer diagonalizer(const IntMatrix& a);

struct OrbitRep {
  std::vector<mpz_class> representative;
  long offset;       // representative == A^{-offset} * queried vector
  QuadElem s_norm;   // |S rep|_inf
};

/// Minimal-|S xi|_inf representative of the A-orbit of xi (|det A| = 1).
/// Lexicographically smallest vector among ties.
OrbitRep orbit_representative(const IntMatrix& a, const std::vector<mpz_class>& xi);

/// Largest k >= 0 with xi in (A*)^k Z^d, decided by exact adjugate
/// division (requires |det A| > 1, xi != 0).
long shell_index(const IntMatrix& a, const std::vector<mpz_class>& xi);

/// Shell partition F_k of Z^d \ {0}: for |det| > 1 the residue shells of
/// A*, for |det| = 1 the orbit shells (A*)^k E with E the minimal
/// representatives of the A*-orbits.
struct ShellPartition {
  explicit ShellPartition(const IntMatrix& a);

  /// Shell index of xi, plus the representative defining it when |det|=1.
  long shell_of(const std::vector<mpz_class>& xi) const;

  bool bilateral() const { return bilateral_; }

 private:
  IntMatrix adjoint_;
  bool bilateral_;
};

/// Exact squared Euclidean length of a shortest nonzero vector of the
/// 2-d lattice spanned by the columns of B (Lagrange/Gauss reduction).
mpz_class shortest_vector_sq(const IntMatrix& b);

/// delta_k^2 = min{|xi|^2 : xi in A^k Z^2 \ {0}} for k = 0..k_max.
std::vector<mpz_class> delta_growth(const IntMatrix& a, int k_max);

struct GrowthRow {
  std::vector<mpz_class> xi;
  long k;
  mpz_class norm_sq;  // |A^k xi|^2 exactly
};

struct RepGrowthTable {
  std::vector<GrowthRow> rows;
  double fitted_c;       // min |A^k xi| * |lambda|^{-|k|} over the table
  double lambda_abs;
  bool comparability_ok;  // min(|eta1|,|eta2|) >= |eta|_inf / |lambda| for eta = S xi
};

/// Growth table over the orbit representatives in the ball |xi|_inf <= R.
RepGrowthTable rep_growth(const IntMatrix& a, long ball_radius, int k_max);

struct DirichletRow {
  std::vector<mpz_class> xi;
  QuadElem product_sq;  // |xi|^2 * dist(xi, V_lambda)^2, exact
};

struct DirichletTable {
  std::vector<DirichletRow> rows;
  QuadElem min_product_sq;
};

/// |xi| * dist(xi, V_lambda) over the ball, exact squared values.
DirichletTable dirichlet_bound(const IntMatrix& a, long ball_radius);

struct SvpFit {
  double c;
  double q;
  bool ok;  // q > 1 achievable on the sample
};

/// Fits |A^k xi| >= c q^{|k|} over the supplied sample (k in [-k_max,k_max]
/// for |det| = 1, [0,k_max] otherwise).
SvpFit verify_svp(const IntMatrix& a,
                  const std::vector<std::vector<mpz_class>>& sample, int k_max);

mpz_class norm_sq(const std::vector<mpz_class>& v);

}  // namespace ergo
