#pragma once
// Normal-coordinate jets built from Ric(0) and (nabla Ric)(0) on a 3-manifold:
// metric, inverse, density, Christoffel symbols, norm powers, parallel
// transport, and the full symbols of curl, d and delta.

#include "curlsym/exact.hpp"
#include "curlsym/jet.hpp"

#include <array>
#include <string>

namespace curlsym {

// Symmetric 3x3 index pair -> slot 0..5 in the order 11,12,13,22,23,33.
inline int sym_slot(int a, int b) {
  if (a > b) std::swap(a, b);
  static const int s[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return s[a][b];
}

inline int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

// c[0..5]: Ric(0); c[6+6s .. 11+6s]: nabla_{s} Ric(0), s = 0,1,2.
// Symmetry in the Ricci index pair is structural.
struct CurvatureConfig {
  std::array<Rational, 24> c{};

  const Rational& ric(int a, int b) const { return c[std::size_t(sym_slot(a, b))]; }
  const Rational& dric(int s, int a, int b) const { return c[std::size_t(6 + 6 * s + sym_slot(a, b))]; }
  Rational& ric(int a, int b) { return c[std::size_t(sym_slot(a, b))]; }
  Rational& dric(int s, int a, int b) { return c[std::size_t(6 + 6 * s + sym_slot(a, b))]; }

  bool ricci_vanishes() const {
    for (int k = 0; k < 6; ++k)
      if (sgn(c[std::size_t(k)]) != 0) return false;
    return true;
  }

  static CurvatureConfig flat() { return {}; }
  // k = 1..24 sets the single constant c_k to 1.
  static CurvatureConfig unit(int k) {
    if (k < 1 || k > 24) throw std::invalid_argument("unit config index out of range");
    CurvatureConfig cfg;
    cfg.c[std::size_t(k - 1)] = 1;
    return cfg;
  }
  // "flat" or "c1".."c24"
  static CurvatureConfig named(const std::string& name) {
    if (name == "flat") return flat();
    if (name.size() >= 2 && name[0] == 'c' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
      int k = std::stoi(name.substr(1));
      if (k >= 1 && k <= 24) return unit(k);
    }
    throw std::invalid_argument("unknown built-in config: " + name);
  }

  friend CurvatureConfig operator+(CurvatureConfig a, const CurvatureConfig& b) {
    for (std::size_t k = 0; k < 24; ++k) a.c[k] += b.c[k];
    return a;
  }
  friend CurvatureConfig operator*(const Rational& s, CurvatureConfig a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
};

struct Tensor4 {
  std::array<Rational, 81> v{};
  Rational& operator()(int a, int b, int c, int d) { return v[std::size_t(27 * a + 9 * b + 3 * c + d)]; }
  const Rational& operator()(int a, int b, int c, int d) const { return v[std::size_t(27 * a + 9 * b + 3 * c + d)]; }
};

struct CurvatureAtOrigin {
  Tensor4 riem;                  // Riem_{abcd}(0); indices raise trivially at the origin
  std::array<Tensor4, 3> driem;  // driem[s](a,b,c,d) = nabla_s Riem_{abcd}(0)
};

// Dimension-three identity expressing Riemann through Ricci:
// Riem_abcd = Ric_ac d_bd - Ric_ad d_bc + Ric_bd d_ac - Ric_bc d_ad + (Sc/2)(d_ad d_bc - d_ac d_bd)
template <class RicFn>
Tensor4 riemann_from_ricci_tensor(RicFn ric) {
  auto d = [](int i, int j) { return i == j ? 1 : 0; };
  Rational sc = ric(0, 0) + ric(1, 1) + ric(2, 2);
  Tensor4 r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int e = 0; e < 3; ++e)
          r(a, b, c, e) = ric(a, c) * d(b, e) - ric(a, e) * d(b, c) + ric(b, e) * d(a, c) - ric(b, c) * d(a, e) +
                          sc / 2 * (d(a, e) * d(b, c) - d(a, c) * d(b, e));
  return r;
}

inline CurvatureAtOrigin riemann_from_ricci(const CurvatureConfig& cfg) {
  CurvatureAtOrigin out;
  out.riem = riemann_from_ricci_tensor([&](int a, int b) { return cfg.ric(a, b); });
  for (int s = 0; s < 3; ++s)
    out.driem[std::size_t(s)] = riemann_from_ricci_tensor([&](int a, int b) { return cfg.dric(s, a, b); });
  return out;
}

struct MetricJet {
  static constexpr int kOrder = 3;
  PolyMatrix g, g_inv;
  TruncatedPoly rho, rho_inv;
  std::array<PolyMatrix, 3> gamma;  // gamma[a](b, c) = Gamma^a_{bc}, order 2
  CurvatureAtOrigin curv;
  std::array<TruncatedPoly, 27> e_lower;  // E_{abc} = rho eps_{abc}

  const TruncatedPoly& Gamma(int a, int b, int c) const { return gamma[std::size_t(a)](b, c); }
  const TruncatedPoly& E(int a, int b, int c) const { return e_lower[std::size_t(9 * a + 3 * b + c)]; }
  const Rational& riem0(int a, int b, int c, int d) const { return curv.riem(a, b, c, d); }
  const Rational& driem0(int s, int a, int b, int c, int d) const { return curv.driem[std::size_t(s)](a, b, c, d); }

  // xi_a = (xi0 + eta)_a with xi0 = (0,0,1)
  static TruncatedPoly xi(int a, int order) {
    TruncatedPoly p = TruncatedPoly::variable(evar(a), order);
    if (a == 2) p += TruncatedPoly::constant(1, order);
    return p;
  }
  // g^{ab} xi_b
  TruncatedPoly xi_up(int a, int order) const {
    TruncatedPoly s(order);
    for (int b = 0; b < 3; ++b) s += g_inv(a, b) * xi(b, order);
    return s;
  }
  // d^2 Gamma^a_{bc} / dx^m dx^n at the origin
  Rational d2Gamma(int a, int b, int c, int m, int n) const {
    MultiIndex e;
    e.e[std::size_t(m)]++;
    e.e[std::size_t(n)]++;
    Rational v = Gamma(a, b, c).coeff(e).re;
    return m == n ? Rational(2 * v) : v;
  }
};

inline TruncatedPoly determinant3(const PolyMatrix& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

// Inverse of a matrix equal to the identity at the anchor, by Neumann series.
inline PolyMatrix neumann_inverse(const PolyMatrix& m) {
  int n = m.order();
  PolyMatrix h = m - PolyMatrix::identity(m.rows, n);
  for (const auto& p : h.a)
    if (!p.constant_term().is_zero()) throw std::invalid_argument("neumann_inverse: not identity at anchor");
  PolyMatrix result = PolyMatrix::identity(m.rows, n);
  PolyMatrix term = result;
  for (int k = 1; k <= n; ++k) {
    term = -(term * h);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

// Metric and derived quantities from a MetricJet-shaped g (Christoffel symbols,
// density, E tensor). Split out so tests can feed perturbed metrics.
inline MetricJet metric_jet_from_g(const PolyMatrix& g, const CurvatureAtOrigin& curv) {
  const int W = MetricJet::kOrder;
  MetricJet mj;
  mj.curv = curv;
  mj.g = g;
  mj.g_inv = neumann_inverse(g);
  TruncatedPoly det = determinant3(g);
  TruncatedPoly u = det - TruncatedPoly::constant(1, W);
  mj.rho = binomial_power_jet(u, rat(1, 2));
  mj.rho_inv = binomial_power_jet(u, rat(-1, 2));
  std::array<PolyMatrix, 3> dg;
  for (int s = 0; s < 3; ++s) dg[std::size_t(s)] = g.diff(xvar(s));
  for (int a = 0; a < 3; ++a) {
    PolyMatrix ga(3, 3, W - 1);
    for (int b = 0; b < 3; ++b)
      for (int c = b; c < 3; ++c) {
        TruncatedPoly s(W - 1);
        for (int d = 0; d < 3; ++d) {
          TruncatedPoly inner = dg[std::size_t(b)](d, c) + dg[std::size_t(c)](d, b) - dg[std::size_t(d)](b, c);
          if (inner.is_zero()) continue;
          s += mj.g_inv(a, d) * inner;
        }
        ga(b, c) = rat(1, 2) * s;
        ga(c, b) = ga(b, c);
      }
    mj.gamma[std::size_t(a)] = ga;
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) mj.e_lower[std::size_t(9 * a + 3 * b + c)] = GaussianRational(levi_civita(a, b, c)) * mj.rho;
  return mj;
}

// g_ab = d_ab - 1/3 Riem_{a m b n} x^m x^n - 1/6 nabla_s Riem_{a m b n} x^s x^m x^n
inline MetricJet build_metric_jet(const CurvatureConfig& cfg) {
  const int W = MetricJet::kOrder;
  CurvatureAtOrigin curv = riemann_from_ricci(cfg);
  PolyMatrix g = PolyMatrix::identity(3, W);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      TruncatedPoly& p = g(a, b);
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          MultiIndex e;
          e.e[std::size_t(m)]++;
          e.e[std::size_t(n)]++;
          p.add_term(e, GaussianRational(Rational(-curv.riem(a, m, b, n) / 3)));
          for (int s = 0; s < 3; ++s) {
            MultiIndex f = e;
            f.e[std::size_t(s)]++;
            p.add_term(f, GaussianRational(Rational(-curv.driem[std::size_t(s)](a, m, b, n) / 6)));
          }
        }
    }
  return metric_jet_from_g(g, curv);
}

struct NormPowerJet {
  Rational power;
  TruncatedPoly jet;
};

// ||xi||^r = (g^{ab} xi_a xi_b)^{r/2} around xi0.
inline NormPowerJet norm_power_jet(const MetricJet& mj, const Rational& r, int order = MetricJet::kOrder) {
  if (r.get_den() != 1 && r.get_den() != 2) throw std::invalid_argument("norm_power_jet: exponent denominator must be 1 or 2");
  order = std::min(order, MetricJet::kOrder);
  TruncatedPoly q(order);
  for (int a = 0; a < 3; ++a) q += MetricJet::xi(a, order) * mj.xi_up(a, order);
  return {r, binomial_power_jet(q - TruncatedPoly::constant(1, order), r / 2)};
}

// |xi|^r for the Euclidean norm: (1 + 2 eta3 + |eta|^2)^{r/2}; exact in eta to any order.
inline TruncatedPoly euclid_norm_power(const Rational& r, int order) {
  TruncatedPoly u = 2 * TruncatedPoly::variable(E3, order);
  for (int a = 0; a < 3; ++a) u += TruncatedPoly::variable(evar(a), order) * TruncatedPoly::variable(evar(a), order);
  return binomial_power_jet(u, r / 2);
}

// E_a^{bc} xi_c = rho eps_{a m n} g^{m b} (g^{n c} xi_c)
inline PolyMatrix e_contract_xi_last(const MetricJet& mj, int order) {
  std::array<TruncatedPoly, 3> v{TruncatedPoly(order), TruncatedPoly(order), TruncatedPoly(order)};
  for (int n = 0; n < 3; ++n) v[std::size_t(n)] = mj.xi_up(n, order);
  PolyMatrix out(3, 3, order);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      TruncatedPoly s(order);
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          int e = levi_civita(a, m, n);
          if (e == 0) continue;
          s += GaussianRational(e) * (mj.g_inv(m, b) * v[std::size_t(n)]);
        }
      out(a, b) = mj.rho.truncated(order) * s;
    }
  return out;
}

// E_a^{cb} xi_c: the contraction on the middle index
inline PolyMatrix e_contract_xi_middle(const MetricJet& mj, int order) {
  std::array<TruncatedPoly, 3> v{TruncatedPoly(order), TruncatedPoly(order), TruncatedPoly(order)};
  for (int m = 0; m < 3; ++m) v[std::size_t(m)] = mj.xi_up(m, order);
  PolyMatrix out(3, 3, order);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      TruncatedPoly s(order);
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          int e = levi_civita(a, m, n);
          if (e == 0) continue;
          s += GaussianRational(e) * (v[std::size_t(m)] * mj.g_inv(n, b));
        }
      out(a, b) = mj.rho.truncated(order) * s;
    }
  return out;
}

// Full symbol of curl on 1-forms: -i E_a^{bc}(x) xi_c.
inline SymbolJet curl_symbol(const MetricJet& mj, int n) {
  PolyMatrix c = GaussianRational(0, -1) * e_contract_xi_last(mj, MetricJet::kOrder);
  return SymbolJet::from(1, n, {c});
}

struct DDeltaSymbols {
  SymbolJet d, delta;
};

// d: functions -> 1-forms, symbol i xi_a.
// delta u = -g^{ab}(d_b u_a - Gamma^c_{ba} u_c): symbol -i g^{ab} xi_b plus g^{ab} Gamma^c_{ba}.
inline DDeltaSymbols d_delta_symbols(const MetricJet& mj, int n) {
  const int W = MetricJet::kOrder;
  PolyMatrix d0(3, 1, W);
  for (int a = 0; a < 3; ++a) d0(a, 0) = GaussianRational::i() * MetricJet::xi(a, W);
  PolyMatrix t0(1, 3, W), t1(1, 3, W - 1);
  for (int a = 0; a < 3; ++a) t0(0, a) = GaussianRational(0, -1) * mj.xi_up(a, W);
  for (int c = 0; c < 3; ++c) {
    TruncatedPoly s(W - 1);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) s += mj.g_inv(a, b) * mj.Gamma(c, b, a);
    t1(0, c) = s;
  }
  return {SymbolJet::from(1, n, {d0}), SymbolJet::from(1, n, {t0, t1})};
}

enum class Endpoints { OriginToY, YToOrigin, YToTauY, OriginToTauY };

// Parallel transport along the straight segment, cubic order in y (the x
// variables double as y). z_vector(a,b) = Z_a^b, z_covector(a,b) = Z^a_b.
struct TransportJet {
  PolyMatrix z_vector, z_covector;
  Endpoints endpoints;
  Rational tau;
};

inline TransportJet transport_jet(const MetricJet& mj, Endpoints ep, const Rational& tau = 0) {
  const int W = MetricJet::kOrder;
  Rational c2, c3;
  switch (ep) {
    case Endpoints::OriginToY: c2 = rat(1, 6), c3 = rat(1, 6); break;
    case Endpoints::YToOrigin: c2 = rat(-1, 6), c3 = rat(-1, 6); break;
    case Endpoints::YToTauY: c2 = (tau * tau - 1) / 6, c3 = (tau * tau * tau - 1) / 6; break;
    case Endpoints::OriginToTauY: c2 = tau * tau / 6, c3 = tau * tau * tau / 6; break;
  }
  // riem_yy(b,a) = Riem^b_{m a n} y^m y^n ; gam_yyy(b,a) = d2Gamma^b_{m a}/dy^n dy^r y^m y^n y^r
  PolyMatrix riem_yy(3, 3, W), gam_yyy(3, 3, W);
  for (int b = 0; b < 3; ++b)
    for (int a = 0; a < 3; ++a) {
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          MultiIndex e;
          e.e[std::size_t(m)]++;
          e.e[std::size_t(n)]++;
          riem_yy(b, a).add_term(e, GaussianRational(mj.riem0(b, m, a, n)));
        }
      // the quadratic part of Gamma carries half the second derivatives
      for (int m = 0; m < 3; ++m) {
        // lift to order W first, otherwise the product is cut back to order 2
        TruncatedPoly quad(W);
        for (const auto& [e, c] : mj.Gamma(b, m, a).terms())
          if (e.degree() == 2) quad.add_term(e, c);
        gam_yyy(b, a) += GaussianRational(2) * (TruncatedPoly::variable(xvar(m), W) * quad);
      }
    }
  TransportJet t{PolyMatrix::identity(3, W), PolyMatrix::identity(3, W), ep, tau};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      t.z_vector(a, b) += GaussianRational(c2) * riem_yy(b, a) - GaussianRational(c3) * gam_yyy(b, a);
      t.z_covector(a, b) += GaussianRational(-c2) * riem_yy(a, b) + GaussianRational(c3) * gam_yyy(a, b);
    }
  return t;
}

}  // namespace curlsym
