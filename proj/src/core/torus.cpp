#include "core/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ergo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double freq_abs(const Freq& xi) {
  mpz_class s = 0;
  for (const auto& c : xi) s += c * c;
  return std::sqrt(s.get_d());
}

mpz_class random_mpz_bits(int bits, std::mt19937_64& rng) {
  mpz_class v = 0;
  for (int b = 0; b < bits; b += 64) {
    v <<= 64;
    v += mpz_class(static_cast<unsigned long>(rng()));
  }
  v %= (mpz_class(1) << bits);
  mpz_setbit(v.get_mpz_t(), static_cast<mp_bitcnt_t>(bits - 1));
  return v;
}

double matrix_sup_norm(const IntMatrix& a) {
  double best = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    double row = 0.0;
    for (int j = 0; j < a.dim(); ++j) row += std::abs(a.at(i, j).get_d());
    best = std::max(best, row);
  }
  return best;
}

double wrap_half(double d) {  // representative of d mod 1 in [-1/2, 1/2)
  d -= std::floor(d + 0.5);
  return d;
}

double segment_distance(double px, double py, double ax, double ay, double bx,
                        double by) {
  const double vx = bx - ax, vy = by - ay;
  const double wx = px - ax, wy = py - ay;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = wx - t * vx, dy = wy - t * vy;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

double FourierFunction::norm_sq() const {
  double s = 0.0;
  for (const auto& [xi, c] : coeffs) s += std::norm(c);
  return s;
}

bool FourierFunction::hermitian() const {
  for (const auto& [xi, c] : coeffs) {
    Freq neg(xi.size());
    for (size_t i = 0; i < xi.size(); ++i) neg[i] = -xi[i];
    auto it = coeffs.find(neg);
    if (it == coeffs.end()) return false;
    if (std::abs(it->second.real() - c.real()) > 1e-12 ||
        std::abs(it->second.imag() + c.imag()) > 1e-12)
      return false;
  }
  return true;
}

TorusPoint TorusPoint::from_rational(std::vector<mpz_class> num, mpz_class den) {
  if (den <= 0) throw std::invalid_argument("TorusPoint: denominator must be > 0");
  TorusPoint p;
  p.rational = true;
  p.den = std::move(den);
  p.num = std::move(num);
  for (auto& n : p.num) {
    n %= p.den;
    if (n < 0) n += p.den;
  }
  return p;
}

TorusPoint TorusPoint::from_double(std::vector<double> x) {
  TorusPoint p;
  p.rational = false;
  p.x = std::move(x);
  for (auto& c : p.x) c -= std::floor(c);
  p.err = 0.0;
  return p;
}

TorusPoint TorusPoint::random_rational(int dim, int denom_bits,
                                       std::mt19937_64& rng) {
  mpz_class den = random_mpz_bits(denom_bits, rng);
  mpz_nextprime(den.get_mpz_t(), den.get_mpz_t());
  std::vector<mpz_class> num(dim);
  for (auto& n : num) n = random_mpz_bits(denom_bits, rng) % den;
  return from_rational(std::move(num), std::move(den));
}

std::vector<double> TorusPoint::as_double() const {
  if (!rational) return x;
  std::vector<double> out;
  out.reserve(num.size());
  for (const auto& n : num) out.push_back(mpq_class(n, den).get_d());
  return out;
}

namespace {

TorusPoint step(const IntMatrix& a, const TorusPoint& p, double a_norm) {
  TorusPoint q = p;
  if (p.rational) {
    std::vector<mpz_class> nn = a.apply(p.num);
    for (auto& c : nn) {
      c %= p.den;
      if (c < 0) c += p.den;
    }
    q.num = std::move(nn);
  } else {
    std::vector<double> nx(p.x.size(), 0.0);
    for (int i = 0; i < a.dim(); ++i) {
      for (int j = 0; j < a.dim(); ++j) nx[i] += a.at(i, j).get_d() * p.x[j];
      nx[i] -= std::floor(nx[i]);
    }
    q.x = std::move(nx);
    q.err = p.err * a_norm + 1e-15;
    if (q.err > std::ldexp(1.0, -32))
      throw PrecisionExhausted("orbit step: fixed-point error bound exceeded 2^-32");
  }
  return q;
}

}  // namespace

OrbitResult orbit_points(const IntMatrix& a, const TorusPoint& x, long n) {
  if (a.det() == 0) throw LatticeError("orbit_points: singular matrix");
  OrbitResult out;
  out.points.reserve(static_cast<size_t>(n));
  const double a_norm = matrix_sup_norm(a);
  TorusPoint cur = x;
  for (long i = 0; i < n; ++i) {
    out.points.push_back(cur);
    if (i > 0 && out.period < 0 && cur.rational && cur.num == x.num)
      out.period = i;
    cur = step(a, cur, a_norm);
  }
  return out;
}

std::complex<double> evaluate(const FourierFunction& f, const TorusPoint& p) {
  std::complex<double> s = 0;
  if (p.rational) {
    for (const auto& [xi, c] : f.coeffs) {
      mpz_class t = 0;
      for (size_t i = 0; i < xi.size(); ++i) t += xi[i] * p.num[i];
      t %= p.den;
      if (t < 0) t += p.den;
      const double theta = kTwoPi * mpq_class(t, p.den).get_d();
      s += c * std::complex<double>(std::cos(theta), std::sin(theta));
    }
  } else {
    for (const auto& [xi, c] : f.coeffs) {
      double dot = 0.0;
      for (size_t i = 0; i < xi.size(); ++i) dot += xi[i].get_d() * p.x[i];
      const double theta = kTwoPi * dot;
      s += c * std::complex<double>(std::cos(theta), std::sin(theta));
    }
  }
  return s;
}

std::complex<double> pointwise_mean(const FourierFunction& f, const IntMatrix& a,
                                    const TorusPoint& x, long n) {
  if (n < 1) throw std::invalid_argument("pointwise_mean: N >= 1 required");
  const double a_norm = matrix_sup_norm(a);
  std::complex<double> sum = 0;
  TorusPoint cur = x;
  for (long i = 0; i < n; ++i) {
    sum += evaluate(f, cur);
    if (i + 1 < n) cur = step(a, cur, a_norm);
  }
  return sum / static_cast<double>(n);
}

FourierFunction spectral_mean(const FourierFunction& f, const IntMatrix& a, long n) {
  if (n < 1) throw std::invalid_argument("spectral_mean: N >= 1 required");
  IntMatrix at = a.transpose();
  FourierFunction out;
  out.dim = f.dim;
  std::vector<std::pair<Freq, std::complex<double>>> cur(f.coeffs.begin(),
                                                         f.coeffs.end());
  const double inv_n = 1.0 / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    for (auto& [xi, c] : cur) out.add(xi, c * inv_n);
    if (i + 1 < n)
      for (auto& [xi, c] : cur) xi = at.apply(xi);
  }
  return out;
}

double rate_weight(long n, double eta) {
  return std::sqrt(static_cast<double>(n)) /
         std::pow(std::log(1.0 + static_cast<double>(n)), 1.5 + eta);
}

std::vector<long> geometric_grid(long n_max) {
  std::vector<long> g;
  for (long n = 2; n <= n_max; n *= 2) g.push_back(n);
  return g;
}

double envelope_statistic(const std::vector<RateCheckpoint>& pts) {
  if (pts.empty()) return 0.0;
  const double n_first = static_cast<double>(pts.front().n);
  const double n_last = static_cast<double>(pts.back().n);
  double first = 0.0, last = 0.0;
  for (const auto& p : pts) {
    if (static_cast<double>(p.n) <= 10.0 * n_first)
      first = std::max(first, p.weighted);
    if (static_cast<double>(p.n) >= n_last / 10.0)
      last = std::max(last, p.weighted);
  }
  if (first == 0.0) return last == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return last / first;
}

RateSeries rate_series(const FourierFunction& f, const IntMatrix& a,
                       const TorusPoint& x, double eta,
                       const std::vector<long>& grid) {
  RateSeries rs;
  rs.eta = eta;
  const std::complex<double> mean = f.mean();
  const double a_norm = matrix_sup_norm(a);

  // Flattened coefficient table: the orbit is stepped exactly, but each
  // evaluation converts the point to double once and sums phases in double.
  // The conversion error does not accumulate along the orbit.
  struct Term {
    std::vector<double> xi;
    std::complex<double> c;
  };
  std::vector<Term> terms;
  terms.reserve(f.coeffs.size());
  for (const auto& [xi, c] : f.coeffs) {
    Term t;
    for (const auto& e : xi) t.xi.push_back(e.get_d());
    t.c = c;
    terms.push_back(std::move(t));
  }

  std::complex<double> sum = 0;
  TorusPoint cur = x;
  long done = 0;
  for (long n_target : grid) {
    while (done < n_target) {
      const std::vector<double> xs = cur.as_double();
      for (const auto& t : terms) {
        double dot = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) dot += t.xi[i] * xs[i];
        const double theta = kTwoPi * (dot - std::floor(dot));
        sum += t.c * std::complex<double>(std::cos(theta), std::sin(theta));
      }
      cur = step(a, cur, a_norm);
      ++done;
    }
    const double dev = std::abs(sum / static_cast<double>(done) - mean);
    rs.checkpoints.push_back({done, dev, rate_weight(done, eta) * dev});
  }
  rs.envelope = envelope_statistic(rs.checkpoints);
  return rs;
}

double log_weight_sum(const FourierFunction& f, double delta) {
  if (delta <= 0) throw std::invalid_argument("log_weight_sum: delta > 0 required");
  double s = 0.0;
  for (const auto& [xi, c] : f.coeffs)
    s += std::pow(std::log(1.0 + freq_abs(xi)), 1.0 + delta) * std::norm(c);
  return s;
}

ShellNormTable projection_norm_sum(const FourierFunction& f, const IntMatrix& a) {
  ShellPartition shells(a);
  std::map<long, double> shell_sq;
  Freq zero(f.dim, mpz_class(0));
  for (const auto& [xi, c] : f.coeffs) {
    if (xi == zero) continue;
    shell_sq[shells.shell_of(xi)] += std::norm(c);
  }
  ShellNormTable t;
  for (const auto& [k, sq] : shell_sq) {
    t.shell_norm[k] = std::sqrt(sq);
    t.total += std::sqrt(sq);
    t.sq_total += sq;
  }
  return t;
}

namespace {

double parseval_shift_sq(const FourierFunction& f, const std::vector<double>& y) {
  // sum |e^{2 pi i xi.y} - 1|^2 |fhat|^2, with |e^{i t}-1|^2 = 4 sin^2(t/2)
  double s = 0.0;
  for (const auto& [xi, c] : f.coeffs) {
    double dot = 0.0;
    for (size_t i = 0; i < xi.size(); ++i) dot += xi[i].get_d() * y[i];
    const double sn = std::sin(std::numbers::pi * dot);
    s += 4.0 * sn * sn * std::norm(c);
  }
  return s;
}

}  // namespace

double modulus_of_continuity(const FourierFunction& f, double t,
                             int random_samples, std::uint64_t seed) {
  if (t <= 0) throw std::invalid_argument("modulus_of_continuity: t > 0 required");
  const int d = f.dim;
  double best = 0.0;
  std::vector<double> y(d, 0.0);
  for (int axis = 0; axis < d; ++axis) {
    for (int i = 0; i <= 6; ++i) {
      std::fill(y.begin(), y.end(), 0.0);
      y[axis] = t * std::ldexp(1.0, -i);
      best = std::max(best, parseval_shift_sq(f, y));
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 0; s < random_samples; ++s) {
    double nrm = 0.0;
    for (int i = 0; i < d; ++i) {
      y[i] = gauss(rng);
      nrm += y[i] * y[i];
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    const double mag = t * unif(rng);
    for (int i = 0; i < d; ++i) y[i] *= mag / nrm;
    best = std::max(best, parseval_shift_sq(f, y));
  }
  return std::sqrt(best);
}

DyadicModulusBound dyadic_modulus_bound(const FourierFunction& f, double alpha,
                                        int j_max, std::uint64_t seed) {
  if (alpha < 0 || j_max < 1)
    throw std::invalid_argument("dyadic_modulus_bound: alpha >= 0, J >= 1 required");
  double lhs = 0.0;
  for (const auto& [xi, c] : f.coeffs)
    lhs += std::pow(std::log(1.0 + freq_abs(xi)), alpha) * std::norm(c);
  double rhs = 0.0;
  for (int j = 0; j <= j_max; ++j) {
    const double w = modulus_of_continuity(f, std::ldexp(1.0, -j), 32, seed + j);
    rhs += (1.0 + std::pow(static_cast<double>(j), alpha)) * w * w;
  }
  return {lhs, rhs, rhs > 0 ? lhs / rhs : 0.0};
}

DomainIndicator DomainIndicator::box(std::vector<mpq_class> lo,
                                     std::vector<mpq_class> hi) {
  DomainIndicator d;
  d.shape = Shape::Box;
  d.lo = std::move(lo);
  d.hi = std::move(hi);
  return d;
}

DomainIndicator DomainIndicator::disk(mpq_class cx, mpq_class cy, mpq_class r) {
  DomainIndicator d;
  d.shape = Shape::Disk;
  d.cx = std::move(cx);
  d.cy = std::move(cy);
  d.radius = std::move(r);
  return d;
}

DomainIndicator DomainIndicator::polygon(
    std::vector<std::pair<mpq_class, mpq_class>> v) {
  if (v.size() < 3) throw std::invalid_argument("polygon: need >= 3 vertices");
  DomainIndicator d;
  d.shape = Shape::Poly;
  d.vertices = std::move(v);
  return d;
}

double DomainIndicator::measure() const {
  switch (shape) {
    case Shape::Box: {
      mpq_class m = 1;
      for (size_t i = 0; i < lo.size(); ++i) m *= hi[i] - lo[i];
      return m.get_d();
    }
    case Shape::Disk:
      return std::numbers::pi * radius.get_d() * radius.get_d();
    case Shape::Poly: {
      mpq_class twice_area = 0;
      const size_t n = vertices.size();
      for (size_t i = 0; i < n; ++i) {
        const auto& [x1, y1] = vertices[i];
        const auto& [x2, y2] = vertices[(i + 1) % n];
        twice_area += x1 * y2 - x2 * y1;
      }
      return std::abs(twice_area.get_d()) / 2.0;
    }
  }
  return 0.0;
}

bool DomainIndicator::contains(const TorusPoint& p) const {
  if (!p.rational) {
    auto v = p.as_double();
    return contains_double(v[0], v.size() > 1 ? v[1] : 0.0);
  }
  std::vector<mpq_class> c;
  c.reserve(p.num.size());
  for (const auto& n : p.num) c.emplace_back(n, p.den);
  for (auto& q : c) q.canonicalize();
  switch (shape) {
    case Shape::Box:
      for (size_t i = 0; i < lo.size(); ++i)
        if (c[i] < lo[i] || c[i] >= hi[i]) return false;
      return true;
    case Shape::Disk: {
      mpq_class dx = c[0] - cx, dy = c[1] - cy;
      return dx * dx + dy * dy <= radius * radius;
    }
    case Shape::Poly: {
      const size_t n = vertices.size();
      for (size_t i = 0; i < n; ++i) {
        const auto& [x1, y1] = vertices[i];
        const auto& [x2, y2] = vertices[(i + 1) % n];
        mpq_class cross = (x2 - x1) * (c[1] - y1) - (y2 - y1) * (c[0] - x1);
        if (cross < 0) return false;  // ccw convention, boundary counts as inside
      }
      return true;
    }
  }
  return false;
}

bool DomainIndicator::contains_double(double px, double py) const {
  switch (shape) {
    case Shape::Box:
      if (px < lo[0].get_d() || px >= hi[0].get_d()) return false;
      if (lo.size() > 1 && (py < lo[1].get_d() || py >= hi[1].get_d())) return false;
      return true;
    case Shape::Disk: {
      const double dx = px - cx.get_d(), dy = py - cy.get_d();
      return dx * dx + dy * dy <= radius.get_d() * radius.get_d();
    }
    case Shape::Poly: {
      const size_t n = vertices.size();
      for (size_t i = 0; i < n; ++i) {
        const double x1 = vertices[i].first.get_d();
        const double y1 = vertices[i].second.get_d();
        const double x2 = vertices[(i + 1) % n].first.get_d();
        const double y2 = vertices[(i + 1) % n].second.get_d();
        if ((x2 - x1) * (py - y1) - (y2 - y1) * (px - x1) < 0) return false;
      }
      return true;
    }
  }
  return false;
}

double DomainIndicator::boundary_distance(double px, double py) const {
  double best = std::numeric_limits<double>::infinity();
  // torus metric: consider the 9 translated copies of the point
  for (int sx = -1; sx <= 1; ++sx)
    for (int sy = -1; sy <= 1; ++sy) {
      const double qx = px + sx, qy = py + sy;
      if (shape == Shape::Disk) {
        const double dx = qx - cx.get_d(), dy = qy - cy.get_d();
        best = std::min(best,
                        std::abs(std::sqrt(dx * dx + dy * dy) - radius.get_d()));
        continue;
      }
      std::vector<std::pair<double, double>> poly;
      if (shape == Shape::Box) {
        const double x1 = lo[0].get_d(), y1 = lo[1].get_d();
        const double x2 = hi[0].get_d(), y2 = hi[1].get_d();
        poly = {{x1, y1}, {x2, y1}, {x2, y2}, {x1, y2}};
      } else {
        for (const auto& [vx, vy] : vertices) poly.push_back({vx.get_d(), vy.get_d()});
      }
      for (size_t i = 0; i < poly.size(); ++i) {
        const auto& [ax, ay] = poly[i];
        const auto& [bx, by] = poly[(i + 1) % poly.size()];
        best = std::min(best, segment_distance(qx, qy, ax, ay, bx, by));
      }
    }
  return best;
}

RateSeries indicator_discrepancy(const DomainIndicator& omega, const IntMatrix& a,
                                 const TorusPoint& x,
                                 const std::vector<long>& grid, double eta) {
  RateSeries rs;
  rs.eta = eta;
  const double vol = omega.measure();
  const double a_norm = matrix_sup_norm(a);
  long hits = 0;
  long done = 0;
  TorusPoint cur = x;
  for (long n_target : grid) {
    while (done < n_target) {
      if (omega.contains(cur)) ++hits;
      cur = step(a, cur, a_norm);
      ++done;
    }
    const double dev =
        std::abs(static_cast<double>(hits) / static_cast<double>(done) - vol);
    rs.checkpoints.push_back({done, dev, rate_weight(done, eta) * dev});
  }
  rs.envelope = envelope_statistic(rs.checkpoints);
  return rs;
}

MonteCarloEstimate boundary_shell_measure(const DomainIndicator& omega, double t,
                                          long samples, std::uint64_t seed) {
  if (!(t > 0 && t < 0.5))
    throw std::invalid_argument("boundary_shell_measure: 0 < t < 1/2 required");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  long hits = 0;
  for (long i = 0; i < samples; ++i) {
    const double px = unif(rng), py = unif(rng);
    if (omega.boundary_distance(px, py) <= t) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) /
                              static_cast<double>(samples));
  return {p, se, samples};
}

}  // namespace ergo
