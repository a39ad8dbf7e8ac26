#pragma once
// Second route to the asymmetry symbol when Ric(0) = 0: the symbol of minus
// the Hodge Laplacian on 1-forms, the hierarchy for its square root and
// inverse square root, and the trace formula through s_{-3}, s_{-4}.

#include "curlsym/symbol.hpp"

namespace curlsym {

struct HodgeSymbol {
  PolyMatrix q1, q0;
};

// q1 = i a_a^{bc}_{mn} xi_c x^m x^n,  q0 = b_a^b_n x^n  (tensors at the origin)
inline HodgeSymbol hodge_symbol(const CurvatureConfig& cfg) {
  if (!cfg.ricci_vanishes()) throw std::invalid_argument("hodge_symbol: requires Ric(0) = 0");
  const int W = MetricJet::kOrder;
  CurvatureAtOrigin cv = riemann_from_ricci(cfg);
  auto dR = [&](int s, int a, int b, int c, int d) -> const Rational& { return cv.driem[std::size_t(s)](a, b, c, d); };
  auto tensor_a = [&](int al, int be, int ga, int mu, int nu) {
    Rational v = 0;
    if (al == be) v += cfg.dric(mu, ga, nu) / 2 - cfg.dric(ga, mu, nu) / 12;
    v -= (dR(al, ga, mu, be, nu) - 3 * dR(mu, ga, al, be, nu) + 5 * dR(nu, ga, mu, be, al)) / 6;
    return v;
  };
  auto tensor_b = [&](int al, int be, int nu) {
    return Rational(-cfg.dric(be, al, nu) / 6 + cfg.dric(al, be, nu) / 2 + cfg.dric(nu, al, be) / 2);
  };
  HodgeSymbol h{PolyMatrix(3, 3, W), PolyMatrix(3, 3, W)};
  for (int al = 0; al < 3; ++al)
    for (int be = 0; be < 3; ++be) {
      TruncatedPoly& p1 = h.q1(al, be);
      for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu) {
          MultiIndex xx;
          xx.e[std::size_t(mu)]++;
          xx.e[std::size_t(nu)]++;
          for (int ga = 0; ga < 3; ++ga) {
            Rational c = tensor_a(al, be, ga, mu, nu);
            if (sgn(c) == 0) continue;
            p1 += TruncatedPoly::monomial(xx, GaussianRational(0, c), W) * MetricJet::xi(ga, W);
          }
        }
      for (int nu = 0; nu < 3; ++nu) {
        MultiIndex x;
        x.e[std::size_t(nu)]++;
        h.q0(al, be).add_term(x, GaussianRational(tensor_b(al, be, nu)));
      }
    }
  return h;
}

// Degree-1 and degree-0 parts of curl o curl + d o delta from the metric jet.
inline HodgeSymbol hodge_symbol_from_jets(const MetricJet& mj, int n = 3) {
  SymbolJet curl = curl_symbol(mj, n);
  DDeltaSymbols dd = d_delta_symbols(mj, n);
  SymbolJet lap = compose(curl, curl) + compose(dd.d, dd.delta);
  return {lap[1], n >= 2 ? lap[2] : PolyMatrix(3, 3, -1)};
}

struct HodgeHierarchy {
  PolyMatrix q1, q0;
  PolyMatrix r0, r_m1, r_m2;
  PolyMatrix s_m2, s_m3, s_m4;
  TruncatedPoly norm, norm_inv;  // Riemannian ||xi||^{+-1}

  SymbolJet sqrt_jet() const {
    return SymbolJet::from(1, 3, {norm * PolyMatrix::identity(3, 3), r0, r_m1, r_m2});
  }
  SymbolJet inv_sqrt_jet() const {
    return SymbolJet::from(-1, 3, {norm_inv * PolyMatrix::identity(3, 3), s_m2, s_m3, s_m4});
  }
  SymbolJet laplacian_jet() const {
    return SymbolJet::from(2, 3, {(norm * norm) * PolyMatrix::identity(3, 3), q1, q0});
  }
};

inline HodgeHierarchy sqrt_hierarchy(const PolyMatrix& q1, const PolyMatrix& q0, const MetricJet& mj) {
  const int W = MetricJet::kOrder;
  const PolyMatrix id = PolyMatrix::identity(3, W);
  const TruncatedPoly e1 = euclid_norm_power(-1, W), e2 = euclid_norm_power(-2, W);
  const TruncatedPoly e_one = euclid_norm_power(1, W);
  const TruncatedPoly nr = norm_power_jet(mj, 1).jet, nr_inv = norm_power_jet(mj, -1).jet;
  const GaussianRational inv_i(0, -1);  // 1/i

  // xi^m d/dx^m with Euclidean index raising
  auto transport = [&](const PolyMatrix& m) {
    PolyMatrix s(3, 3, m.order() - 1);
    for (int mu = 0; mu < 3; ++mu) s += MetricJet::xi(mu, W) * m.diff(xvar(mu));
    return s;
  };
  // sum (|xi|)_{xi_m xi_n} (F)_{x^m x^n}
  auto second = [&](const PolyMatrix& f) {
    PolyMatrix s(3, 3, f.order() - 2);
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu)
        s += e_one.diff(evar(mu)).diff(evar(nu)) * f.diff(xvar(mu)).diff(xvar(nu));
    return s;
  };
  auto third = [&](const PolyMatrix& f) {
    PolyMatrix s(3, 3, f.order() - 3);
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu)
        for (int rh = 0; rh < 3; ++rh)
          s += e_one.diff(evar(mu)).diff(evar(nu)).diff(evar(rh)) *
               f.diff(xvar(mu)).diff(xvar(nu)).diff(xvar(rh));
    return s;
  };
  const PolyMatrix nr_id = nr * id, nr_inv_id = nr_inv * id;

  HodgeHierarchy h;
  h.q1 = q1;
  h.q0 = q0;
  h.norm = nr;
  h.norm_inv = nr_inv;
  h.r0 = GaussianRational(rat(1, 2)) * (e1 * q1) - (GaussianRational(rat(1, 2)) * inv_i) * (e2 * transport(nr_id));
  h.r_m1 = GaussianRational(rat(1, 2)) * (e1 * q0) - (GaussianRational(rat(1, 2)) * inv_i) * (e2 * transport(h.r0)) +
           GaussianRational(rat(1, 4)) * (e1 * second(nr_id));
  h.r_m2 = -(GaussianRational(rat(1, 2)) * inv_i) * (e2 * transport(h.r_m1)) +
           GaussianRational(rat(1, 4)) * (e1 * second(h.r0)) +
           (GaussianRational(rat(1, 12)) * inv_i) * (e1 * third(nr_id));
  h.s_m2 = -(e2 * h.r0) - inv_i * (e2 * transport(nr_inv_id));
  h.s_m3 = -(e2 * h.r_m1) - inv_i * (e2 * transport(h.s_m2)) + GaussianRational(rat(1, 2)) * (e1 * second(nr_inv_id));
  h.s_m4 = -(e2 * h.r_m2) - inv_i * (e2 * transport(h.s_m3)) + GaussianRational(rat(1, 2)) * (e1 * second(h.s_m2)) +
           (GaussianRational(rat(1, 6)) * inv_i) * (e1 * third(nr_inv_id));
  return h;
}

// -eps_b^{ac} ( d_{x^c}[s_{-3}]_a^b + i xi0_c [s_{-4}]_a^b ) at the anchor
inline GaussianRational aprin_alternative(const HodgeHierarchy& h) {
  GaussianRational sum;
  for (int b = 0; b < 3; ++b)
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c) {
        int e = levi_civita(b, a, c);
        if (e == 0) continue;
        GaussianRational v = h.s_m3(a, b).diff(xvar(c)).constant_term();
        if (c == 2) v += GaussianRational::i() * h.s_m4(a, b).constant_term();
        sum += GaussianRational(e) * v;
      }
  return -sum;
}

inline GaussianRational aprin_alternative(const CurvatureConfig& cfg) {
  HodgeSymbol q = hodge_symbol(cfg);
  return aprin_alternative(sqrt_hierarchy(q.q1, q.q0, build_metric_jet(cfg)));
}

}  // namespace curlsym
