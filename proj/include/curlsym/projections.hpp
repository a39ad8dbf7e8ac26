#pragma once
// Iterative construction of the spectral projection symbols of curl and the
// trace of p+ - p- (the asymmetry symbol) at the anchor.

#include "curlsym/symbol.hpp"

#include <gmp.h>

namespace curlsym {

enum class Aleph { Zero, Plus, Minus };

inline int eigen_sign(Aleph a) { return a == Aleph::Zero ? 0 : (a == Aleph::Plus ? 1 : -1); }
inline const char* aleph_name(Aleph a) { return a == Aleph::Zero ? "0" : (a == Aleph::Plus ? "+" : "-"); }

struct InitialSymbols {
  PolyMatrix p0, plus, minus;
  const PolyMatrix& get(Aleph a) const { return a == Aleph::Zero ? p0 : (a == Aleph::Plus ? plus : minus); }
};

// P0 = ||xi||^-2 xi_a g^{bc} xi_c ;  P+- = 1/2 [ I - P0 +- i ||xi||^-1 E_a^{cb} xi_c ]
inline InitialSymbols initial_symbols(const MetricJet& mj, int order = MetricJet::kOrder) {
  TruncatedPoly nm1 = norm_power_jet(mj, -1, order).jet;
  TruncatedPoly nm2 = norm_power_jet(mj, -2, order).jet;
  PolyMatrix p0(3, 3, order);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) p0(a, b) = nm2 * (MetricJet::xi(a, order) * mj.xi_up(b, order));
  PolyMatrix rot = GaussianRational::i() * (nm1 * e_contract_xi_middle(mj, order));
  PolyMatrix rest = PolyMatrix::identity(3, order) - p0;
  const GaussianRational half(rat(1, 2));
  return {p0, half * (rest + rot), half * (rest - rot)};
}

struct ProjectionStep {
  int k;
  PolyMatrix R, S, T, X;
};

struct ProjectionFamily {
  Aleph aleph;
  int accuracy;
  PolyMatrix principal;  // P^(aleph)
  SymbolJet jet;
  std::vector<ProjectionStep> steps;
};

inline ProjectionFamily run_algorithm(const MetricJet& mj, Aleph aleph, int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("run_algorithm: accuracy must be 1, 2 or 3");
  InitialSymbols init = initial_symbols(mj);
  SymbolJet curl = curl_symbol(mj, n);
  const PolyMatrix& c0 = curl[0];
  TruncatedPoly nm1 = norm_power_jet(mj, -1).jet;
  const PolyMatrix pa = init.get(aleph).truncated(n);

  ProjectionFamily fam{aleph, n, pa, SymbolJet::from(0, n, {pa}), {}};
  for (int k = 1; k <= n; ++k) {
    const SymbolJet& p = fam.jet;
    PolyMatrix r = -(compose_component(p, p, k) - p[k]);
    PolyMatrix s = (-r + pa * r + r * pa).truncated(n - k);
    PolyMatrix comm = compose_component(p, curl, k) - compose_component(curl, p, k);
    PolyMatrix t = (comm + (s * c0 - c0 * s)).truncated(n - k);
    PolyMatrix x = s;
    for (Aleph other : {Aleph::Zero, Aleph::Plus, Aleph::Minus}) {
      if (other == aleph) continue;
      const PolyMatrix pb = init.get(other).truncated(n);
      // 1 / (h_aleph - h_other) with h = sign * ||xi||
      Rational inv(1, eigen_sign(aleph) - eigen_sign(other));
      inv.canonicalize();
      x += (GaussianRational(inv) * nm1) * (pa * t * pb - pb * t * pa);
    }
    x = x.truncated(n - k);
    fam.steps.push_back({k, r, s, t, x});
    fam.jet.set(k, x);
  }
  return fam;
}

inline ProjectionFamily run_algorithm(const CurvatureConfig& cfg, Aleph aleph, int n) {
  return run_algorithm(build_metric_jet(cfg), aleph, n);
}

struct VerifyReport {
  bool ok = true;
  std::string failure;  // "idempotency" or "commutation"
  int degree = 0;
  PolyMatrix residual;
};

// P^2 = P through all retained degrees; [P, curl] = 0 through degree 1 - (N-1).
inline VerifyReport verify_projection(const ProjectionFamily& fam, const MetricJet& mj) {
  const SymbolJet& p = fam.jet;
  for (int k = 0; k <= fam.accuracy; ++k) {
    PolyMatrix res = compose_component(p, p, k) - p[k];
    if (!res.is_zero()) return {false, "idempotency", -k, res};
  }
  SymbolJet curl = curl_symbol(mj, fam.accuracy);
  for (int k = 0; k <= fam.accuracy - 1; ++k) {
    PolyMatrix res = compose_component(p, curl, k) - compose_component(curl, p, k);
    if (!res.is_zero()) return {false, "commutation", 1 - k, res};
  }
  return {};
}

// Subprincipal symbol of the projection, restricted to the anchor point x = 0.
inline PolyMatrix subprincipal_check(const ProjectionFamily& fam, const MetricJet& mj) {
  return subprincipal(fam.jet, mj).at_x_zero();
}

// Exact square root of a non-negative rational, if it exists.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

// -(1/(2 ||xi||^5)) eps^{abc} nabla_a Ric_b^r xi_c xi_r at the origin.
inline Rational aprin_closed_form(const CurvatureConfig& cfg, const std::array<Rational, 3>& xi) {
  Rational n2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  if (sgn(n2) == 0) throw std::invalid_argument("aprin_closed_form: zero covector");
  auto norm = exact_sqrt(n2);
  if (!norm) throw std::invalid_argument("aprin_closed_form: covector norm is irrational");
  Rational s = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        int e = levi_civita(a, b, c);
        if (e == 0) continue;
        for (int r = 0; r < 3; ++r) s += e * cfg.dric(a, b, r) * xi[std::size_t(c)] * xi[std::size_t(r)];
      }
  Rational n5 = n2 * n2 * *norm;
  return -s / (2 * n5);
}

inline std::array<Rational, 3> anchor_covector() { return {Rational(0), Rational(0), Rational(1)}; }

struct AsymmetryReport {
  std::vector<GaussianRational> diag_traces;  // degrees 0, -1, -2, -3
  std::vector<GaussianRational> pt_corrections;  // levels 2, 3
  GaussianRational a_prin_value;
  Rational closed_form_value;
  ProjectionFamily plus, minus;

  bool pass() const {
    for (int k = 0; k < 3; ++k)
      if (!diag_traces[std::size_t(k)].is_zero()) return false;
    for (const auto& v : pt_corrections)
      if (!v.is_zero()) return false;
    return a_prin_value == GaussianRational(closed_form_value);
  }
};

inline AsymmetryReport asymmetry_report(const CurvatureConfig& cfg) {
  MetricJet mj = build_metric_jet(cfg);
  AsymmetryReport rep{{}, {}, {}, {}, run_algorithm(mj, Aleph::Plus, 3), run_algorithm(mj, Aleph::Minus, 3)};
  SymbolJet diff = rep.plus.jet - rep.minus.jet;
  for (int k = 0; k <= 3; ++k) rep.diag_traces.push_back(diff[k].trace().constant_term());
  rep.pt_corrections = {transport_correction(diff, mj, 2), transport_correction(diff, mj, 3)};
  rep.a_prin_value = rep.diag_traces[3];
  rep.closed_form_value = aprin_closed_form(cfg, anchor_covector());
  return rep;
}

}  // namespace curlsym
