#pragma once
// Spectra of the Laplacian and of curl on Berger 3-spheres, counting
// functions, eta partial sums, the theta/zeta decomposition and the exact
// closed forms at s = 0.

#include "curlsym/exact.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace curlsym {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      c_ += (sum_ - t) + x;
    else
      c_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0, c_ = 0;
};

enum class Series { I, II, III, IV, Laplace };

inline const char* series_name(Series s) {
  switch (s) {
    case Series::I: return "I";
    case Series::II: return "II";
    case Series::III: return "III";
    case Series::IV: return "IV";
    default: return "LAPLACE";
  }
}

struct SpectrumEntry {
  Series series;
  int n, l;
  double value;
  long multiplicity;
};

struct SpectrumTable {
  double a = 1;
  int n_max = 0;
  // every eigenvalue of absolute value below this is in the table
  double complete_below = 0;
  std::vector<SpectrumEntry> entries;
};

inline void check_a(double a) {
  if (!(a > 0) || !std::isfinite(a)) throw std::invalid_argument("Berger parameter a must be positive");
}

// n(n+2) + (a^-2 - 1)(n - 2l)^2
inline double laplace_value(double a, int n, int l) {
  double d = n - 2 * l;
  return double(n) * (n + 2) + (1 / (a * a) - 1) * d * d;
}

inline long laplace_multiplicity(int n, int l) {
  if (n == 0) return 1;
  if (n % 2 == 1) return 2L * n + 2;
  return 2 * l < n ? 2L * n + 2 : long(n) + 1;
}

// Smallest Laplace value over all n > n_max (values grow in n once the
// (n-2l)^2 term is bounded by (n-2)^2 or dropped).
inline double laplace_lower_bound_beyond(double a, int n_max, bool l_from_one) {
  double c = 1 / (a * a) - 1;
  double n = n_max + 1;
  double d2 = l_from_one ? (n - 2) * (n - 2) : n * n;
  return n * (n + 2) + std::min(0.0, c) * std::max(0.0, d2);
}

inline SpectrumTable laplacian_spectrum(double a, int n_max) {
  check_a(a);
  if (n_max < 0) throw std::invalid_argument("laplacian_spectrum: n_max must be >= 0");
  SpectrumTable t;
  t.a = a;
  t.n_max = n_max;
  for (int n = 0; n <= n_max; ++n)
    for (int l = 0; l <= n / 2; ++l) t.entries.push_back({Series::Laplace, n, l, laplace_value(a, n, l), laplace_multiplicity(n, l)});
  t.complete_below = laplace_lower_bound_beyond(a, n_max, false);
  return t;
}

inline SpectrumTable curl_spectrum(double a, int n_max) {
  check_a(a);
  if (n_max < 2) throw std::invalid_argument("curl_spectrum: n_max must be >= 2");
  SpectrumTable t;
  t.a = a;
  t.n_max = n_max;
  for (int n = 2; n <= n_max; ++n) t.entries.push_back({Series::I, n, 0, n / a, 2L * n - 2});
  for (int n = 2; n <= n_max; ++n)
    t.entries.push_back({Series::II, n, 0, (n + 2 * (a * a - 1)) / a, n == 2 ? 1L : 2L * n - 2});
  for (Series s : {Series::III, Series::IV})
    for (int n = 2; n <= n_max; ++n)
      for (int l = 1; l <= n / 2; ++l) {
        double root = std::sqrt(a * a + laplace_value(a, n, l));
        t.entries.push_back({s, n, l, s == Series::III ? a + root : a - root, laplace_multiplicity(n, l)});
      }
  double m = laplace_lower_bound_beyond(a, n_max, true);
  double root = std::sqrt(a * a + m);
  t.complete_below = std::min({(n_max + 1) / a, (n_max + 1 + 2 * (a * a - 1)) / a, root - a});
  return t;
}

// Multiplicity-weighted count of eigenvalues with 0 < sign*value < lambda.
inline long counting_function(const SpectrumTable& t, double lambda, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("counting_function: sign must be +1 or -1");
  if (lambda <= 0) return 0;
  if (lambda > t.complete_below)
    throw std::out_of_range("counting_function: lambda beyond the enumerated range; increase n_max");
  long count = 0;
  for (const auto& e : t.entries) {
    double v = sign * e.value;
    if (v > 0 && v < lambda) count += e.multiplicity;
  }
  return count;
}

struct WeylReport {
  double lambda;
  long count;
  double ratio;      // N * 6 pi^2 / (Vol lambda^3), Vol = 2 pi^2 a
  double deviation;  // |ratio - 1|
  double bound;      // 3 / lambda
};

inline WeylReport weyl_check(const SpectrumTable& t, double lambda, int sign) {
  long n = counting_function(t, lambda, sign);
  double ratio = 3.0 * double(n) / (t.a * lambda * lambda * lambda);
  return {lambda, n, ratio, std::abs(ratio - 1), 3 / lambda};
}

// Entries are generated in (series, n, l) order; the sum follows that order.
inline double eta_partial(const SpectrumTable& t, double s) {
  if (!(s > 3)) throw std::invalid_argument("eta_partial: s must exceed 3");
  CompensatedSum acc;
  for (const auto& e : t.entries) {
    if (e.series == Series::Laplace) throw std::invalid_argument("eta_partial: curl table required");
    double sg = e.value > 0 ? 1 : -1;
    acc.add(sg * double(e.multiplicity) * std::pow(std::abs(e.value), -s));
  }
  return acc.value();
}

// Riemann zeta for real s != 1: direct sum to N - 1, then Euler-Maclaurin
// with Bernoulli terms through B_12. Exact at negative integers.
inline double riemann_zeta(double s) {
  if (s == 1) throw std::domain_error("riemann_zeta: pole at s = 1");
  const int N = 20;
  static const double b2k[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
  CompensatedSum acc;
  for (int n = 1; n < N; ++n) acc.add(std::pow(double(n), -s));
  acc.add(std::pow(double(N), 1 - s) / (s - 1));
  acc.add(0.5 * std::pow(double(N), -s));
  // term_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
  double rising = s, fact = 2;
  for (int k = 1; k <= 6; ++k) {
    acc.add(b2k[k - 1] / fact * rising * std::pow(double(N), -s - 2 * k + 1));
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    fact *= double(2 * k + 1) * (2 * k + 2);
  }
  return acc.value();
}

// Cross-check of the expansion at s = 3 and 5 against a plain direct sum to
// 10^5 plus the integral tail; returns the larger relative difference.
inline double zeta_self_check() {
  double worst = 0;
  for (double s : {3.0, 5.0}) {
    const int M = 100000;
    CompensatedSum acc;
    for (int n = M; n >= 1; --n) acc.add(std::pow(double(n), -s));
    acc.add(std::pow(M + 0.5, 1 - s) / (s - 1));  // midpoint tail, error O(M^-s-1)
    worst = std::max(worst, std::abs(acc.value() / riemann_zeta(s) - 1));
  }
  return worst;
}

// (sqrt(a^2+mu) + a)^-s - (sqrt(a^2+mu) - a)^-s without cancellation
inline double theta_bracket(double a, double mu, double s) {
  double root = std::sqrt(a * a + mu);
  return std::pow(root - a, -s) * std::expm1(-2 * s * std::atanh(a / root));
}

inline double theta_partial(const SpectrumTable& lap, double s) {
  CompensatedSum acc;
  for (const auto& e : lap.entries) {
    if (e.series != Series::Laplace) throw std::invalid_argument("theta_partial: Laplacian table required");
    if (e.value <= 0) continue;
    acc.add(double(e.multiplicity) * theta_bracket(lap.a, e.value, s));
  }
  return acc.value();
}

// theta(s) + (2a)^-s + 4 a^s zeta(s-1), theta over the Laplacian table to n_max
inline double eta_decomposition_rhs(double a, double s, int n_max) {
  check_a(a);
  if (!(s > 2)) throw std::invalid_argument("eta_decomposition_rhs: s must exceed 2");
  CompensatedSum acc;
  acc.add(theta_partial(laplacian_spectrum(a, n_max), s));
  acc.add(std::pow(2 * a, -s));
  acc.add(4 * std::pow(a, s) * riemann_zeta(s - 1));
  return acc.value();
}

// Bracket minus its two-term large-mu expansion, scaled by mu^(s/2 + 2).
inline double hitchin_remainder(double a, double mu, double s) {
  double lead = -2 * s * a * std::pow(mu, -0.5) + s * (1 - s * s) / 3 * a * a * a * std::pow(mu, -1.5);
  return (theta_bracket(a, mu, s) - std::pow(mu, -s / 2) * lead) * std::pow(mu, s / 2 + 2);
}

struct EtaClosedForms {
  Rational eta0, theta0, dirac_eta0;
  bool decomposition_holds;  // eta0 = theta0 + 1 + 4 zeta(-1)
  bool dirac_relation_holds;  // eta0 = -4 dirac_eta0
};

inline EtaClosedForms eta_closed_forms(const Rational& a) {
  if (sgn(a) <= 0) throw std::invalid_argument("eta_closed_forms: a must be positive");
  Rational a2 = a * a;
  Rational d = (a2 - 1) * (a2 - 1);
  EtaClosedForms r;
  r.eta0 = rat(2, 3) * d;
  r.theta0 = rat(2, 3) * a2 * (a2 - 2);
  r.dirac_eta0 = rat(-1, 6) * d;
  const Rational zeta_m1 = rat(-1, 12);
  r.decomposition_holds = r.eta0 == r.theta0 + 1 + 4 * zeta_m1;
  r.dirac_relation_holds = r.eta0 == -4 * r.dirac_eta0;
  return r;
}

}  // namespace curlsym
