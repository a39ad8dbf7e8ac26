#include "curlsym/projections.hpp"
#include "random_jets.hpp"

#include <gtest/gtest.h>

using namespace curlsym;

namespace {

using Grid = std::vector<std::vector<GaussianRational>>;

Grid anchor(const PolyMatrix& m) { return constant_part(m.at_x_zero().at_eta_zero()); }

GaussianRational q(long p, long d = 1) { return GaussianRational(rat(p, d)); }
GaussianRational qi(long p, long d = 1) { return GaussianRational(0, rat(p, d)); }
const GaussianRational Z;

Grid scaled(const GaussianRational& s, const Grid& g) {
  Grid out = g;
  for (auto& r : out)
    for (auto& v : r) v = s * v;
  return out;
}

TruncatedPoly x(int a, int order) { return TruncatedPoly::variable(xvar(a), order); }

PolyMatrix scaled(const GaussianRational& s, const PolyMatrix& m) { return s * m; }

}  // namespace

TEST(InitialSymbols, FlatAnchor) {
  InitialSymbols init = initial_symbols(build_metric_jet(CurvatureConfig::flat()));
  EXPECT_EQ(anchor(init.p0), (Grid{{Z, Z, Z}, {Z, Z, Z}, {Z, Z, q(1)}}));
  for (int s : {1, -1}) {
    const PolyMatrix& p = s == 1 ? init.plus : init.minus;
    EXPECT_EQ(anchor(p), scaled(q(1, 2), Grid{{q(1), qi(-s), Z}, {qi(s), q(1), Z}, {Z, Z, Z}}));
  }
}

TEST(InitialSymbols, ResolutionAndOrthogonality) {
  MetricJet flat = build_metric_jet(CurvatureConfig::flat());
  InitialSymbols f = initial_symbols(flat);
  const PolyMatrix* ps[] = {&f.p0, &f.plus, &f.minus};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      PolyMatrix prod = *ps[a] * *ps[b];
      if (a == b)
        EXPECT_EQ(prod, *ps[a]);
      else
        EXPECT_TRUE(prod.is_zero());
    }
  for (int k = 1; k <= 24; ++k) {
    InitialSymbols s = initial_symbols(build_metric_jet(CurvatureConfig::unit(k)));
    EXPECT_EQ(s.p0 + s.plus + s.minus, PolyMatrix::identity(3, MetricJet::kOrder));
  }
}

TEST(RunAlgorithm, FlatNeedsNoCorrections) {
  for (Aleph a : {Aleph::Zero, Aleph::Plus, Aleph::Minus}) {
    ProjectionFamily f = run_algorithm(CurvatureConfig::flat(), a, 3);
    for (const auto& s : f.steps) EXPECT_TRUE(s.X.is_zero());
    EXPECT_TRUE(verify_projection(f, build_metric_jet(CurvatureConfig::flat())).ok);
  }
}

TEST(RunAlgorithm, AccuracyRange) {
  EXPECT_THROW(run_algorithm(CurvatureConfig::flat(), Aleph::Plus, 0), std::invalid_argument);
  EXPECT_THROW(run_algorithm(CurvatureConfig::flat(), Aleph::Plus, 4), std::invalid_argument);
}

// Unit Ricci config c1 at accuracy 2: reference intermediates of step 2.
TEST(RunAlgorithm, UnitRicciSecondStep) {
  GaussianRational tr;
  for (int s : {1, -1}) {
    ProjectionFamily f = run_algorithm(CurvatureConfig::unit(1), s == 1 ? Aleph::Plus : Aleph::Minus, 2);
    const ProjectionStep& st = f.steps.at(1);
    EXPECT_EQ(anchor(st.R), scaled(q(-1, 12), Grid{{q(1), qi(-2 * s), Z}, {qi(2 * s), q(1), Z}, {Z, Z, Z}}));
    EXPECT_EQ(anchor(st.S), scaled(q(-1, 12), Grid{{q(2), qi(-s), Z}, {qi(s), q(2), Z}, {Z, Z, Z}}));
    EXPECT_EQ(anchor(st.T), scaled(q(s, 12), Grid{{q(1), Z, Z}, {Z, q(-1), Z}, {Z, Z, Z}}));
    EXPECT_EQ(anchor(st.X), scaled(q(-1, 24), Grid{{q(4), qi(-3 * s), Z}, {qi(s), q(4), Z}, {Z, Z, Z}}));
    tr += GaussianRational(s) * st.X.trace().constant_term();
  }
  EXPECT_TRUE(tr.is_zero());
}

// The degree -1 component after step 1 for c1. Entry (3,1) carries +3i x^1;
// with -3i x^1 the jet is not idempotent at degree -1 (checked below).
PolyMatrix unit_ricci_first_correction(int s, int sign_31 = 1) {
  const int o = 1;
  PolyMatrix m(3, 3, o);
  m(0, 0) = qi(1) * x(2, o);
  m(0, 1) = q(s) * x(2, o);
  m(1, 0) = q(s) * x(2, o);
  m(1, 1) = qi(-1) * x(2, o);
  m(2, 0) = q(s) * x(1, o) + qi(3 * sign_31) * x(0, o);
  m(2, 1) = q(s) * x(0, o) + qi(1) * x(1, o);
  return scaled(q(-1, 12), m);
}

TEST(RunAlgorithm, UnitRicciFirstCorrection) {
  MetricJet mj = build_metric_jet(CurvatureConfig::unit(1));
  for (int s : {1, -1}) {
    ProjectionFamily f = run_algorithm(mj, s == 1 ? Aleph::Plus : Aleph::Minus, 2);
    EXPECT_EQ(f.jet[1].at_eta_zero(), unit_ricci_first_correction(s));

    ProjectionFamily g = f;
    g.jet = SymbolJet::from(0, 2, {f.jet[0], unit_ricci_first_correction(s, -1), f.jet[2]});
    VerifyReport r = verify_projection(g, mj);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.failure, "idempotency");
    EXPECT_EQ(r.degree, -1);
  }
}

// Unit gradient config c11 at accuracy 3.
TEST(RunAlgorithm, UnitGradientThirdStep) {
  GaussianRational tr;
  for (int s : {1, -1}) {
    ProjectionFamily f = run_algorithm(CurvatureConfig::unit(11), s == 1 ? Aleph::Plus : Aleph::Minus, 3);

    PolyMatrix m1(3, 3, 2);
    m1(0, 0) = q(-5 * s) * x(0, 2) * x(0, 2) + qi(-4) * x(0, 2) * x(1, 2);
    m1(0, 1) = qi(6) * x(0, 2) * x(0, 2) + q(-3 * s) * x(0, 2) * x(1, 2);
    m1(1, 0) = qi(-2) * x(0, 2) * x(0, 2) + q(s) * x(0, 2) * x(1, 2);
    m1(1, 1) = q(-3 * s) * x(0, 2) * x(0, 2);
    m1(2, 0) = qi(2) * x(1, 2) * x(2, 2);
    m1(2, 1) = qi(-6) * x(0, 2) * x(2, 2);
    EXPECT_EQ(f.jet[1].at_eta_zero(), scaled(q(1, 24), m1));

    PolyMatrix m2(3, 3, 1);
    m2(0, 0) = qi(s) * x(2, 1);
    m2(0, 1) = q(6) * x(2, 1);
    m2(1, 0) = q(-2) * x(2, 1);
    m2(1, 1) = qi(3 * s) * x(2, 1);
    m2(2, 0) = qi(9 * s) * x(0, 1) + q(-2) * x(1, 1);
    m2(2, 1) = q(6) * x(0, 1) + qi(3 * s) * x(1, 1);
    EXPECT_EQ(f.jet[2].at_eta_zero(), scaled(q(-1, 24), m2));

    const ProjectionStep& st = f.steps.at(2);
    EXPECT_EQ(anchor(st.R), scaled(qi(1, 8), Grid{{Z, q(1), Z}, {q(-1), Z, Z}, {Z, Z, Z}}));
    EXPECT_EQ(anchor(st.S), scaled(q(-s, 8), Grid{{q(1), Z, Z}, {Z, q(1), Z}, {Z, Z, Z}}));
    EXPECT_EQ(anchor(st.T), scaled(qi(-s, 4), Grid{{Z, q(1), Z}, {q(1), Z, Z}, {Z, Z, Z}}));
    EXPECT_EQ(anchor(st.X), scaled(q(-s, 4), Grid{{q(1), Z, Z}, {Z, Z, Z}, {Z, Z, Z}}));
    tr += GaussianRational(s) * st.X.trace().constant_term();
  }
  EXPECT_EQ(tr, q(-1, 2));
}

TEST(VerifyProjection, AllUnitConfigsAllFamilies) {
  for (int k = 1; k <= 24; ++k) {
    MetricJet mj = build_metric_jet(CurvatureConfig::unit(k));
    for (Aleph a : {Aleph::Zero, Aleph::Plus, Aleph::Minus}) {
      ProjectionFamily f = run_algorithm(mj, a, 3);
      VerifyReport r = verify_projection(f, mj);
      EXPECT_TRUE(r.ok) << "c" << k << " " << aleph_name(a) << " " << r.failure << " at " << r.degree;
      EXPECT_TRUE(subprincipal_check(f, mj).is_zero()) << "c" << k << " " << aleph_name(a);
    }
  }
}

TEST(VerifyProjection, CorruptedCorrectionFailsIdempotency) {
  MetricJet mj = build_metric_jet(CurvatureConfig::unit(4));
  ProjectionFamily f = run_algorithm(mj, Aleph::Plus, 3);
  PolyMatrix bad = f.jet[1];
  bad(0, 0) += TruncatedPoly::constant(GaussianRational(1), bad.order());
  f.jet.set(1, bad);
  VerifyReport r = verify_projection(f, mj);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failure, "idempotency");
  EXPECT_EQ(r.degree, -1);
}

TEST(VerifyProjection, CorruptedChristoffelBreaksSubprincipal) {
  MetricJet mj = build_metric_jet(CurvatureConfig::unit(11));
  ProjectionFamily f = run_algorithm(mj, Aleph::Plus, 3);
  ASSERT_TRUE(subprincipal_check(f, mj).is_zero());
  MetricJet broken = mj;
  broken.gamma[0](0, 0) += TruncatedPoly::constant(GaussianRational(1), 2);
  EXPECT_FALSE(subprincipal_check(f, broken).is_zero());
}

TEST(ResolutionOfIdentity, FullJets) {
  for (int k = 1; k <= 24; ++k) {
    MetricJet mj = build_metric_jet(CurvatureConfig::unit(k));
    SymbolJet sum = run_algorithm(mj, Aleph::Zero, 3).jet + run_algorithm(mj, Aleph::Plus, 3).jet +
                    run_algorithm(mj, Aleph::Minus, 3).jet;
    EXPECT_EQ(sum, SymbolJet::identity(3)) << "c" << k;
  }
}

TEST(AsymmetryReport, UnitGradientConfig) {
  AsymmetryReport r = asymmetry_report(CurvatureConfig::unit(11));
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(r.diag_traces[std::size_t(k)].is_zero());
  EXPECT_EQ(r.a_prin_value, q(-1, 2));
  EXPECT_EQ(r.closed_form_value, rat(-1, 2));
  EXPECT_TRUE(r.pass());
}

TEST(AsymmetryReport, UnitRicciAndC7) {
  AsymmetryReport r1 = asymmetry_report(CurvatureConfig::unit(1));
  EXPECT_TRUE(r1.diag_traces[2].is_zero());
  AsymmetryReport r7 = asymmetry_report(CurvatureConfig::unit(7));
  EXPECT_TRUE(r7.a_prin_value.is_zero());
}

TEST(AsymmetryReport, DegreeMinusOneVanishesOverAnchor) {
  for (int k = 1; k <= 24; ++k) {
    MetricJet mj = build_metric_jet(CurvatureConfig::unit(k));
    SymbolJet d = run_algorithm(mj, Aleph::Plus, 3).jet - run_algorithm(mj, Aleph::Minus, 3).jet;
    EXPECT_TRUE(d[1].at_x_zero().is_zero()) << "c" << k;
  }
}

TEST(AsymmetryReport, RandomConfigsAndLinearity) {
  testgen::Gen g(41);
  for (int k = 0; k < 20; ++k) {
    CurvatureConfig cfg = g.config(6);
    AsymmetryReport r = asymmetry_report(cfg);
    EXPECT_TRUE(r.pass()) << "random config " << k;
    EXPECT_TRUE(r.a_prin_value.is_real());
    // linear in the config: sum over unit configs weighted by the constants
    GaussianRational lin;
    for (int u = 0; u < 24; ++u) {
      if (sgn(cfg.c[std::size_t(u)]) == 0) continue;
      lin += GaussianRational(cfg.c[std::size_t(u)]) * asymmetry_report(CurvatureConfig::unit(u + 1)).a_prin_value;
    }
    EXPECT_EQ(r.a_prin_value, lin);
  }
}

TEST(ClosedForm, Examples) {
  EXPECT_EQ(aprin_closed_form(CurvatureConfig::unit(11), anchor_covector()), rat(-1, 2));
  EXPECT_EQ(aprin_closed_form(CurvatureConfig::flat(), {rat(3), rat(4), rat(0)}), 0);
  // |(3,4,0)| = 5, ||xi||^5 scaling
  CurvatureConfig cfg = CurvatureConfig::unit(11);
  Rational v1 = aprin_closed_form(cfg, {rat(0), rat(0), rat(1)});
  Rational v2 = aprin_closed_form(cfg, {rat(0), rat(0), rat(2)});
  EXPECT_EQ(v2, v1 / 8);
  EXPECT_THROW(aprin_closed_form(cfg, {rat(0), rat(0), rat(0)}), std::invalid_argument);
  EXPECT_THROW(aprin_closed_form(cfg, {rat(1), rat(1), rat(0)}), std::invalid_argument);
  EXPECT_EQ(exact_sqrt(rat(9, 4)).value(), rat(3, 2));
}
