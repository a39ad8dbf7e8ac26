#pragma once
// Model-level checks of the kernel singularity of the asymmetry operator:
// K1 and the Basset cosine integral, the t^2 ln t coefficient of t K1(t),
// the singular coefficient built from nabla Ric, and its sphere average.

#include "curlsym/berger.hpp"  // CompensatedSum
#include "curlsym/geometry.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <vector>

namespace curlsym {

namespace detail {

// 1/x + ln(x/2) I1(x) - (x/4) sum_k [psi(k+1) + psi(k+2)] (x^2/4)^k / (k!(k+1)!)
inline double k1_series(double x) {
  const double q = x * x / 4;
  double term = 1;  // (x^2/4)^k / (k!(k+1)!)
  double psi1 = -std::numbers::egamma_v<double>;  // psi(k+1)
  double psi2 = psi1 + 1;                         // psi(k+2)
  double i_sum = 0, p_sum = 0;
  for (int k = 0; k < 200; ++k) {
    i_sum += term;
    double p = (psi1 + psi2) * term;
    p_sum += p;
    if (k > 2 && term < 1e-18 * i_sum) break;
    term *= q / ((k + 1.0) * (k + 2.0));
    psi1 += 1.0 / (k + 1);
    psi2 += 1.0 / (k + 2);
  }
  return 1 / x + std::log(x / 2) * (x / 2) * i_sum - (x / 4) * p_sum;
}

// Steed's continued fraction with Temme's normalisation, order 0 then the
// K1/K0 ratio.
inline double k1_continued_fraction(double x) {
  const double eps = 1e-16;
  double b = 2 * (1 + x), d = 1 / b, h = d, delh = d;
  double q1 = 0, q2 = 1;
  const double a1 = 0.25;
  double q = a1, c = a1, a = -a1;
  double s = 1 + q * delh;
  for (int i = 2; i < 100000; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2;
    d = 1 / (b + a * d);
    delh = (b * d - 1) * delh;
    h += delh;
    double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < eps) break;
  }
  h = a1 * h;
  double k0 = std::sqrt(std::numbers::pi / (2 * x)) * std::exp(-x) / s;
  return k0 * (x + 0.5 - h) / x;
}

}  // namespace detail

inline constexpr double kBesselCrossover = 2.0;

inline double bessel_k1(double t) {
  if (!(t > 0)) throw std::domain_error("bessel_k1: argument must be positive");
  return t <= kBesselCrossover ? detail::k1_series(t) : detail::k1_continued_fraction(t);
}

struct CheckResult {
  std::string name;
  double input = 0;
  double value = 0, reference = 0, residual = 0, tolerance = 0;
  bool pass() const { return residual <= tolerance; }
};

// Both K1 branches at the crossover point.
inline CheckResult bessel_crossover_check(double tol = 1e-11) {
  double s = detail::k1_series(kBesselCrossover), c = detail::k1_continued_fraction(kBesselCrossover);
  return {"bessel_crossover", kBesselCrossover, s, c, std::abs(s - c) / std::abs(c), tol};
}

// 2 int_0^T cos(y t) (1 + t^2)^(-3/2) dt on unit panels; the dropped tail is
// below 2 * 1/(2 T^2).
inline double basset_quadrature(double y, double cutoff = 2.5e4) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [y](double t) { return std::cos(y * t) * std::pow(1 + t * t, -1.5); };
  CompensatedSum acc;
  const long panels = long(std::ceil(cutoff));
  for (long k = 0; k < panels; ++k) {
    double lo = double(k), hi = std::min(double(k + 1), cutoff);
    acc.add(gauss_kronrod<double, 31>::integrate(f, lo, hi, 3, 1e-12));
  }
  return 2 * acc.value();
}

inline CheckResult basset_check(double y, double tol = 1e-8, double cutoff = 2.5e4) {
  if (y < 0) throw std::invalid_argument("basset_check: y must be non-negative");
  double q = basset_quadrature(y, cutoff);
  double ref = y == 0 ? 2.0 : 2 * y * bessel_k1(y);
  return {"basset", y, q, ref, std::abs(q - ref), tol};
}

// K1(t) against 1/t + (t/4)(2 ln t + 2 gamma - 1 - ln 4); the tolerance is
// the t^3 |ln t| envelope of the next term.
inline CheckResult small_argument_check(double t) {
  double approx = 1 / t + (t / 4) * (2 * std::log(t) + 2 * std::numbers::egamma_v<double> - 1 - std::log(4.0));
  double k = bessel_k1(t);
  return {"small_argument", t, k, approx, std::abs(k - approx), t * t * t * std::abs(std::log(t))};
}

// g(t) = t K1(t) / (6 pi^2) = g(0) + B t^2 ln t + ...; two-point fit of B at t, t/2.
inline double log_coefficient_estimate(double t) {
  const double six_pi2 = 6 * std::numbers::pi * std::numbers::pi;
  auto h = [&](double u) { return (u * bessel_k1(u) - 1) / (u * u) / six_pi2; };
  return (h(t) - h(t / 2)) / std::log(2.0);
}

inline double log_coefficient_reference() { return 1 / (12 * std::numbers::pi * std::numbers::pi); }

inline CheckResult log_coefficient_check(double t = 1e-3, double rel_tol = 0.01) {
  double est = log_coefficient_estimate(t), ref = log_coefficient_reference();
  return {"log_coefficient", t, est, ref, std::abs(est - ref) / ref, rel_tol};
}

// t K1(t) - 1 - (t^2/2) ln t
inline double k1_regular_part(double t) { return t * bessel_k1(t) - 1 - t * t / 2 * std::log(t); }

// c_{gr} = prefactor * pi^pi_power * eps_{abg} nabla_a Ric_{br}, at the origin
struct SingularCoefficient {
  std::array<std::array<Rational, 3>, 3> c{};
  Rational prefactor = rat(1, 12);
  int pi_power = -2;

  Rational trace() const { return c[0][0] + c[1][1] + c[2][2]; }
  double numeric(int g, int r) const { return c[std::size_t(g)][std::size_t(r)].get_d() * prefactor.get_d() * std::pow(std::numbers::pi, pi_power); }
};

inline SingularCoefficient singular_coefficient(const CurvatureConfig& cfg) {
  SingularCoefficient sc;
  for (int g = 0; g < 3; ++g)
    for (int r = 0; r < 3; ++r) {
      Rational v = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          int e = levi_civita(a, b, g);
          if (e != 0) v += e * cfg.dric(a, b, r);
        }
      sc.c[std::size_t(g)][std::size_t(r)] = v;
    }
  return sc;
}

struct SphereRule {
  std::vector<std::array<double, 3>> nodes;  // unit vectors
  std::vector<double> weights;               // sum to 4 pi
  int degree;
};

// 6 octahedron vertices, exact through degree 3.
inline SphereRule octahedron_rule() {
  SphereRule r;
  for (int k = 0; k < 3; ++k)
    for (double s : {1.0, -1.0}) {
      std::array<double, 3> v{0, 0, 0};
      v[std::size_t(k)] = s;
      r.nodes.push_back(v);
    }
  r.weights.assign(6, 4 * std::numbers::pi / 6);
  r.degree = 3;
  return r;
}

// 12 icosahedron vertices, exact through degree 5.
inline SphereRule icosahedron_rule() {
  SphereRule r;
  const double phi = std::numbers::phi;
  const double nrm = std::sqrt(1 + phi * phi);
  for (int k = 0; k < 3; ++k)
    for (double s1 : {1.0, -1.0})
      for (double s2 : {1.0, -1.0}) {
        std::array<double, 3> v{};
        v[std::size_t(k)] = 0;
        v[std::size_t((k + 1) % 3)] = s1 / nrm;
        v[std::size_t((k + 2) % 3)] = s2 * phi / nrm;
        r.nodes.push_back(v);
      }
  r.weights.assign(12, 4 * std::numbers::pi / 12);
  r.degree = 5;
  return r;
}

inline SphereRule sphere_rule(int points) {
  if (points == 6) return octahedron_rule();
  if (points == 12) return icosahedron_rule();
  throw std::invalid_argument("sphere_rule: 6 or 12 points supported");
}

struct SphereReport {
  double radius;
  double average;                                   // of c_{gr} z^g z^r / r^2
  std::array<std::array<double, 3>, 3> moment;      // int z^g z^r dS
  double moment_reference;                          // 4 pi r^4 / 3
  double diag_rel_error, offdiag_abs;
};

inline SphereReport sphere_average_check(const SingularCoefficient& sc, double r, int points = 12) {
  if (!(r > 0)) throw std::invalid_argument("sphere_average_check: radius must be positive");
  SphereRule rule = sphere_rule(points);
  SphereReport rep{};
  rep.radius = r;
  CompensatedSum avg;
  std::array<std::array<CompensatedSum, 3>, 3> mom{};
  const double area = 4 * std::numbers::pi * r * r;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    std::array<double, 3> z;
    for (int k = 0; k < 3; ++k) z[std::size_t(k)] = r * rule.nodes[q][std::size_t(k)];
    double w = rule.weights[q] * r * r;  // surface element of the radius-r sphere
    double f = 0;
    for (int g = 0; g < 3; ++g)
      for (int p = 0; p < 3; ++p) {
        f += sc.numeric(g, p) * z[std::size_t(g)] * z[std::size_t(p)];
        mom[std::size_t(g)][std::size_t(p)].add(w * z[std::size_t(g)] * z[std::size_t(p)]);
      }
    avg.add(w * f / (r * r));
  }
  rep.average = avg.value() / area;
  rep.moment_reference = 4 * std::numbers::pi * r * r * r * r / 3;
  for (int g = 0; g < 3; ++g)
    for (int p = 0; p < 3; ++p) {
      double m = mom[std::size_t(g)][std::size_t(p)].value();
      rep.moment[std::size_t(g)][std::size_t(p)] = m;
      if (g == p)
        rep.diag_rel_error = std::max(rep.diag_rel_error, std::abs(m - rep.moment_reference) / rep.moment_reference);
      else
        rep.offdiag_abs = std::max(rep.offdiag_abs, std::abs(m));
    }
  return rep;
}

}  // namespace curlsym
