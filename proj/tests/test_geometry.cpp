#include "curlsym/projections.hpp"
#include "random_jets.hpp"

#include <gtest/gtest.h>

using namespace curlsym;

namespace {

const int W = MetricJet::kOrder;

TruncatedPoly x(int a) { return TruncatedPoly::variable(xvar(a), W); }
TruncatedPoly c(long p, long q = 1) { return TruncatedPoly::constant(GaussianRational(rat(p, q)), W); }

std::vector<CurvatureConfig> all_units() {
  std::vector<CurvatureConfig> v;
  for (int k = 1; k <= 24; ++k) v.push_back(CurvatureConfig::unit(k));
  return v;
}

}  // namespace

TEST(RiemannFromRicci, Flat) {
  auto cv = riemann_from_ricci(CurvatureConfig::flat());
  for (const auto& v : cv.riem.v) EXPECT_EQ(sgn(v), 0);
}

TEST(RiemannFromRicci, IdentityRicci) {
  CurvatureConfig cfg;
  cfg.ric(0, 0) = 1, cfg.ric(1, 1) = 1, cfg.ric(2, 2) = 1;
  auto cv = riemann_from_ricci(cfg);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g)
        for (int d = 0; d < 3; ++d) {
          Rational expect = rat(1, 2) * ((a == g && b == d ? 1 : 0) - (a == d && b == g ? 1 : 0));
          EXPECT_EQ(cv.riem(a, b, g, d), expect);
        }
}

TEST(RiemannFromRicci, SymmetriesAndContraction) {
  for (const auto& cfg : all_units()) {
    auto cv = riemann_from_ricci(cfg);
    std::vector<std::pair<const Tensor4*, std::function<Rational(int, int)>>> pairs = {
        {&cv.riem, [&](int m, int n) { return cfg.ric(m, n); }}};
    for (int s = 0; s < 3; ++s) pairs.push_back({&cv.driem[std::size_t(s)], [&, s](int m, int n) { return cfg.dric(s, m, n); }});
    for (auto& [t, ric] : pairs) {
      const Tensor4& r = *t;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int g = 0; g < 3; ++g)
            for (int d = 0; d < 3; ++d) {
              EXPECT_EQ(r(a, b, g, d), r(g, d, a, b));
              EXPECT_EQ(r(a, b, g, d), -r(b, a, g, d));
              EXPECT_EQ(r(a, b, g, d) + r(a, g, d, b) + r(a, d, b, g), 0);
            }
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          Rational s = r(0, m, 0, n) + r(1, m, 1, n) + r(2, m, 2, n);
          EXPECT_EQ(s, ric(m, n));
        }
    }
  }
}

TEST(MetricJet, UnitRicciConfig) {
  MetricJet mj = build_metric_jet(CurvatureConfig::unit(1));
  EXPECT_EQ(mj.g(0, 0), c(1) - c(1, 6) * x(1) * x(1) - c(1, 6) * x(2) * x(2));
  EXPECT_EQ(mj.g(0, 1), c(1, 6) * x(0) * x(1));
  EXPECT_EQ(mj.rho, c(1) - c(1, 6) * x(0) * x(0));
}

TEST(MetricJet, UnitGradientConfig) {
  MetricJet mj = build_metric_jet(CurvatureConfig::unit(11));
  EXPECT_EQ(mj.g(0, 0), c(1) - c(1, 3) * x(0) * x(1) * x(2));
  EXPECT_EQ(mj.g(1, 2), -(c(1, 6) * x(0) * x(0) * x(0)));
  EXPECT_EQ(mj.rho, c(1) - c(1, 6) * x(0) * x(1) * x(2));
}

TEST(MetricJet, Flat) {
  MetricJet mj = build_metric_jet(CurvatureConfig::flat());
  EXPECT_EQ(mj.g, PolyMatrix::identity(3, W));
  for (const auto& g : mj.gamma) EXPECT_TRUE(g.is_zero());
}

TEST(MetricJet, InvariantsAllConfigs) {
  testgen::Gen gen(21);
  auto cfgs = all_units();
  for (int k = 0; k < 20; ++k) cfgs.push_back(gen.config(6));
  for (const auto& cfg : cfgs) {
    MetricJet mj = build_metric_jet(cfg);
    EXPECT_EQ(mj.g * mj.g_inv, PolyMatrix::identity(3, W));
    EXPECT_EQ(mj.rho * mj.rho_inv, c(1));
    // normal coordinates
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        EXPECT_EQ(mj.g(a, b).constant_term(), GaussianRational(a == b ? 1 : 0));
        for (int m = 0; m < 3; ++m) EXPECT_TRUE(mj.g(a, b).diff(xvar(m)).constant_term().is_zero());
      }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int g = 0; g < 3; ++g) {
          EXPECT_EQ(mj.Gamma(a, b, g), mj.Gamma(a, g, b));
          EXPECT_TRUE(mj.Gamma(a, b, g).constant_term().is_zero());
        }
    // Gamma^a_{ga} = d_g ln rho, i.e. rho Gamma^a_{ga} = d_g rho
    for (int g = 0; g < 3; ++g) {
      TruncatedPoly tr = mj.Gamma(0, g, 0) + mj.Gamma(1, g, 1) + mj.Gamma(2, g, 2);
      EXPECT_EQ(mj.rho.truncated(2) * tr, mj.rho.diff(xvar(g)));
    }
  }
}

TEST(MetricJet, ScalarCurvatureInsensitivity) {
  testgen::Gen gen(22);
  for (int k = 0; k < 20; ++k) {
    CurvatureConfig cfg = gen.config(6);
    Rational s = gen.rational();
    std::array<Rational, 3> ds{gen.rational(), gen.rational(), gen.rational()};
    CurvatureConfig shifted = cfg;
    for (int a = 0; a < 3; ++a) {
      shifted.ric(a, a) += s;
      for (int t = 0; t < 3; ++t) shifted.dric(t, a, a) += ds[std::size_t(t)];
    }
    EXPECT_FALSE(build_metric_jet(shifted).g == build_metric_jet(cfg).g);
    EXPECT_EQ(aprin_closed_form(shifted, anchor_covector()), aprin_closed_form(cfg, anchor_covector()));
  }
}

TEST(NormPower, FlatExpansion) {
  MetricJet mj = build_metric_jet(CurvatureConfig::flat());
  TruncatedPoly h1 = TruncatedPoly::variable(E1, W), h2 = TruncatedPoly::variable(E2, W), h3 = TruncatedPoly::variable(E3, W);
  TruncatedPoly n1 = norm_power_jet(mj, 1).jet;
  // sqrt(1 + 2 h3 + |h|^2) = 1 + h3 + (h1^2 + h2^2)/2 - h3 (h1^2 + h2^2)/2 + O(4)
  TruncatedPoly expect = c(1) + h3 + c(1, 2) * (h1 * h1 + h2 * h2) - c(1, 2) * h3 * (h1 * h1 + h2 * h2);
  EXPECT_EQ(n1, expect);
  EXPECT_EQ(norm_power_jet(mj, 2).jet, c(1) + c(2) * h3 + h1 * h1 + h2 * h2 + h3 * h3);
  EXPECT_EQ(n1, euclid_norm_power(1, W));
}

TEST(NormPower, ReciprocalAndValidation) {
  for (const auto& cfg : all_units()) {
    MetricJet mj = build_metric_jet(cfg);
    EXPECT_EQ(norm_power_jet(mj, 1).jet * norm_power_jet(mj, -1).jet, c(1));
    EXPECT_EQ(norm_power_jet(mj, rat(1, 2)).jet * norm_power_jet(mj, rat(-1, 2)).jet, c(1));
  }
  MetricJet flat = build_metric_jet(CurvatureConfig::flat());
  EXPECT_THROW(norm_power_jet(flat, rat(1, 3)), std::invalid_argument);
}

TEST(CurlSymbol, FlatAtAnchor) {
  MetricJet mj = build_metric_jet(CurvatureConfig::flat());
  SymbolJet cs = curl_symbol(mj, 3);
  const GaussianRational mi(0, -1), pi(0, 1), z;
  EXPECT_EQ(constant_part(cs[0]), (std::vector<std::vector<GaussianRational>>{{z, mi, z}, {pi, z, z}, {z, z, z}}));
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(cs[k].is_zero());
  PolyMatrix sq = cs[0] * cs[0];
  EXPECT_EQ(constant_part(sq), constant_part(PolyMatrix::constant({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}, 0)));
  InitialSymbols init = initial_symbols(mj);
  EXPECT_EQ(constant_part(sq), constant_part(PolyMatrix::identity(3, 0) - init.p0));
}

TEST(CurlSymbol, TracelessAllConfigs) {
  for (const auto& cfg : all_units()) EXPECT_TRUE(curl_symbol(build_metric_jet(cfg), 3)[0].trace().is_zero());
}

TEST(DDelta, FlatSymbols) {
  MetricJet mj = build_metric_jet(CurvatureConfig::flat());
  DDeltaSymbols dd = d_delta_symbols(mj, 2);
  for (int a = 0; a < 3; ++a) {
    EXPECT_EQ(dd.d[0](a, 0), GaussianRational::i() * MetricJet::xi(a, 2));
    EXPECT_EQ(dd.delta[0](0, a), GaussianRational(0, -1) * MetricJet::xi(a, 2));
  }
  EXPECT_TRUE(dd.delta[1].is_zero());
  // (i xi_a)(-i xi^b) = +xi_a xi^b, the e3 e3^T pattern at the anchor
  SymbolJet dlt = compose(dd.d, dd.delta);
  EXPECT_EQ(constant_part(dlt[0]), constant_part(PolyMatrix::constant({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}, 0)));
  // with curl^2 it completes to |xi|^2 I
  SymbolJet cs = curl_symbol(mj, 2);
  PolyMatrix lap = compose(cs, cs)[0] + dlt[0];
  EXPECT_EQ(lap, norm_power_jet(mj, 2).jet.truncated(2) * PolyMatrix::identity(3, 2));
}

TEST(DDelta, ZerothOrderVanishesAtOrigin) {
  for (const auto& cfg : all_units()) {
    DDeltaSymbols dd = d_delta_symbols(build_metric_jet(cfg), 2);
    for (int a = 0; a < 3; ++a) EXPECT_TRUE(dd.delta[1](0, a).at_x_zero().is_zero());
  }
}

TEST(Transport, FlatIsIdentity) {
  MetricJet mj = build_metric_jet(CurvatureConfig::flat());
  for (Endpoints e : {Endpoints::OriginToY, Endpoints::YToOrigin, Endpoints::YToTauY, Endpoints::OriginToTauY}) {
    TransportJet t = transport_jet(mj, e, rat(1, 2));
    EXPECT_EQ(t.z_vector, PolyMatrix::identity(3, W));
    EXPECT_EQ(t.z_covector, PolyMatrix::identity(3, W));
  }
}

TEST(Transport, RoundTripAndCompatibility) {
  for (const auto& cfg : all_units()) {
    MetricJet mj = build_metric_jet(cfg);
    TransportJet there = transport_jet(mj, Endpoints::OriginToY), back = transport_jet(mj, Endpoints::YToOrigin);
    EXPECT_EQ(there.z_vector * back.z_vector, PolyMatrix::identity(3, W));
    EXPECT_EQ(there.z_covector * back.z_covector, PolyMatrix::identity(3, W));
    for (const TransportJet* t : {&there, &back}) {
      PolyMatrix zc_t(3, 3, W);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) zc_t(a, b) = t->z_covector(b, a);
      EXPECT_EQ(t->z_vector * zc_t, PolyMatrix::identity(3, W));
    }
  }
}

TEST(Transport, TauIndependence) {
  for (const auto& cfg : all_units()) {
    MetricJet mj = build_metric_jet(cfg);
    auto product = [&](const Rational& tau) {
      PolyMatrix zc = transport_jet(mj, Endpoints::OriginToTauY, tau).z_covector;
      PolyMatrix zv = transport_jet(mj, Endpoints::YToTauY, tau).z_vector;
      PolyMatrix out(3, 3, W);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int k = 0; k < 3; ++k) out(a, b) += zc(a, k) * zv(b, k);
      return out;
    };
    PolyMatrix at0 = product(0);
    EXPECT_EQ(product(rat(1, 2)), at0);
    EXPECT_EQ(product(1), at0);
  }
}
