#include <gtest/gtest.h>

#include <cmath>

#include "acm/contact.hpp"
#include "acm/geometry.hpp"
#include "acm/simplify.hpp"
#include "support/fd_geometry.hpp"

namespace acm {
namespace {

const Chart kXyz({"x", "y", "z"});

Expr E(const char* s) { return kXyz.parse(s); }

// e^{−2θ(z)}(dx² + dy²) + dz², ξ = ∂z, η = dz, φ∂x = ∂y, φ∂y = −∂x.
AlmostContactStructure warped_family(const char* theta) {
  const Expr w = sym::simplify(sym::exp(-2.0 * E(theta)));
  MetricField g({{w, 0.0, 0.0}, {0.0, w, 0.0}, {0.0, 0.0, 1.0}});
  Tensor11 phi{{{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
  return AlmostContactStructure(kXyz, g, phi, VectorField{{0.0, 0.0, 1.0}}, OneForm{{0.0, 0.0, 1.0}});
}

// The same warped family in dimension five, φ rotating (x1,y1) and (x2,y2).
AlmostContactStructure warped_family_5d(const char* theta) {
  const Chart chart({"x1", "y1", "x2", "y2", "z"});
  const Expr w = sym::simplify(sym::exp(-2.0 * chart.parse(theta)));
  ExprMatrix g(5, std::vector<Expr>(5));
  Tensor11 phi = Tensor11::zero(5);
  for (std::size_t i = 0; i < 4; ++i) g[i][i] = w;
  g[4][4] = 1.0;
  for (std::size_t i = 0; i < 4; i += 2) {
    phi.m[i + 1][i] = 1.0;
    phi.m[i][i + 1] = -1.0;
  }
  return AlmostContactStructure(chart, MetricField(g), phi, VectorField{{0.0, 0.0, 0.0, 0.0, 1.0}},
                                OneForm{{0.0, 0.0, 0.0, 0.0, 1.0}});
}

AlmostContactStructure flat_model() { return warped_family("0"); }

// Sasakian structure on R³: η = ½(dz − y dx), ξ = 2∂z, g = η⊗η + ¼(dx² + dy²).
AlmostContactStructure sasakian() {
  const Expr y = E("y");
  MetricField g({{0.25 + y * y / 4.0, 0.0, -y / 4.0}, {0.0, 0.25, 0.0}, {-y / 4.0, 0.0, 0.25}});
  Tensor11 phi{{{0.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}, {0.0, y, 0.0}}};
  return AlmostContactStructure(kXyz, g, phi, VectorField{{0.0, 0.0, 2.0}}, OneForm{{-y / 2.0, 0.0, 0.5}});
}

// J∂x = a∂x + ∂y with a = z on a metric making (∂x, J∂x) orthonormal;
// ω = dx∧dy is closed but L_ξ φ ≠ 0, so the structure is not normal.
AlmostContactStructure tilted() {
  const Expr a = E("z");
  const Expr b = sym::simplify(-(1.0 + a * a));
  MetricField g({{1.0, -a, 0.0}, {-a, sym::simplify(1.0 + a * a), 0.0}, {0.0, 0.0, 1.0}});
  Tensor11 phi{{{a, b, 0.0}, {1.0, -a, 0.0}, {0.0, 0.0, 0.0}}};
  return AlmostContactStructure(kXyz, g, phi, VectorField{{0.0, 0.0, 1.0}}, OneForm{{0.0, 0.0, 1.0}});
}

SampledStructure sampled(const AlmostContactStructure& s, std::size_t count = 50) {
  SampleConfig config;
  config.count = count;
  return sample_structure(s, config);
}

double at(const Expr& e, double x, double y, double z) {
  const double p[] = {x, y, z};
  return sym::evaluate(e, p);
}

double residual(const ResidualReport& r, const std::string& name) {
  const CheckResult* c = r.find(name);
  EXPECT_NE(c, nullptr) << name;
  return c ? c->residual : NAN;
}

TEST(Structure, RejectsEvenDimensionAndMismatch) {
  const Chart xy({"x", "y"});
  MetricField g({{1.0, 0.0}, {0.0, 1.0}});
  EXPECT_THROW(AlmostContactStructure(xy, g, Tensor11::zero(2), VectorField{{0.0, 1.0}}, OneForm{{0.0, 1.0}}),
               std::invalid_argument);
  const AlmostContactStructure ok = flat_model();
  EXPECT_THROW(AlmostContactStructure(kXyz, ok.g, Tensor11::zero(2), ok.xi, ok.eta), std::invalid_argument);
  EXPECT_EQ(ok.n(), 1u);
}

TEST(ValidateAlgebraic, WarpedFamilyPasses) {
  for (const char* theta : {"0", "-z", "-ln(cosh(z))", "-z^3"}) {
    const ResidualReport r = validate_algebraic(sampled(warped_family(theta)));
    EXPECT_TRUE(r.passed()) << theta;
    for (const CheckResult& c : r.checks) EXPECT_EQ(c.residual, 0.0) << theta << " " << c.name;
    EXPECT_EQ(r.checks.size(), 7u);
  }
  EXPECT_TRUE(validate_algebraic(sampled(sasakian())).passed());
}

TEST(ValidateAlgebraic, ScaledPhiFails) {
  AlmostContactStructure s = warped_family("-z");
  for (auto& row : s.phi.m) {
    for (Expr& e : row) e = sym::simplify(2.0 * e);
  }
  const ResidualReport r = validate_algebraic(sampled(s));
  EXPECT_FALSE(r.passed());
  // (2φ)² + I − η⊗ξ = −3I on ker η
  EXPECT_DOUBLE_EQ(residual(r, "phi_squared"), 3.0);
  EXPECT_EQ(residual(r, "eta_phi"), 0.0);
}

TEST(ValidateAlgebraic, WrongMetricBreaksCompatibility) {
  AlmostContactStructure s = warped_family("-z");
  s.g = MetricField({{1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 1.0}});
  const ResidualReport r = validate_algebraic(sampled(s));
  EXPECT_GT(residual(r, "metric_compat"), 0.5);
  EXPECT_GT(residual(r, "phi_skew"), 0.5);
  EXPECT_EQ(residual(r, "xi_dual"), 0.0);
}

TEST(FundamentalForm, WarpedFamily) {
  const KForm omega = fundamental_form(warped_family("-z"));
  EXPECT_EQ(omega.components().size(), 1u);
  for (const double z : {-1.0, 0.3, 2.0}) EXPECT_NEAR(at(omega.at({0, 1}), 0.2, -0.4, z), std::exp(2.0 * z), 1e-12);
  EXPECT_NEAR(at(omega.at({1, 0}), 0, 0, 0.5), -std::exp(1.0), 1e-12);
  const KForm flat = fundamental_form(flat_model());
  EXPECT_TRUE(flat.at({0, 1}).is_constant(1.0));

  // ω(e1, e2) = 1 for e1 = e^θ ∂x, e2 = e^θ ∂y
  const AlmostContactStructure s = warped_family("-ln(cosh(z))");
  const KForm w = fundamental_form(s);
  const Point p{0.1, 0.2, 0.7};
  const double e = 1.0 / std::cosh(0.7);
  EXPECT_NEAR(w.evaluate(p, {{e, 0, 0}, {0, e, 0}}), 1.0, 1e-12);
  EXPECT_EQ(w.evaluate(p, {{0, 0, 1}, {e, 0, 0}}), 0.0);
}

TEST(Nijenhuis, WarpedFamilyIsNormal) {
  for (const char* theta : {"0", "-z", "-ln(cosh(z))", "sin(z)"}) {
    const AlmostContactStructure s = warped_family(theta);
    for (const VectorField& v : nijenhuis(s)) {
      for (const Expr& c : v.c) EXPECT_TRUE(c.is_constant(0.0)) << theta << ": " << sym::to_string(c);
    }
    EXPECT_TRUE(is_normal(sampled(s, 10)));
  }
}

TEST(Nijenhuis, SasakianIsNormal) {
  // Normality of this structure needs the dη ξ term with weight 1 under the
  // alternating-sum convention; weight ½ would leave N(∂x, ∂y) = ξ.
  const AlmostContactStructure s = sasakian();
  const auto n = nijenhuis(s);
  ASSERT_EQ(n.size(), 3u);
  for (const VectorField& v : n) {
    for (const Expr& c : v.c) EXPECT_TRUE(sym::simplify(c).is_constant(0.0)) << sym::to_string(c);
  }
  EXPECT_EQ(nijenhuis_residual(sampled(s, 10)), 0.0);
}

TEST(Nijenhuis, DetectsNonNormalStructure) {
  const SampledStructure ss = sampled(tilted());
  EXPECT_TRUE(validate_algebraic(ss).passed());
  EXPECT_GT(nijenhuis_residual(ss), 1e-3);
  EXPECT_FALSE(is_normal(ss));
  EXPECT_GT(h_tensor_residual(ss), 1e-3);
}

TEST(ExtractF, WarpedFamilyMatchesMinusThetaPrime) {
  struct Case {
    const char* theta;
    double (*f)(double);
    double (*f_tilde)(double);
  };
  const Case cases[] = {
      {"0", [](double) { return 0.0; }, [](double) { return 0.0; }},
      {"-z", [](double) { return 1.0; }, [](double) { return 1.0; }},
      {"-ln(cosh(z))", [](double z) { return std::tanh(z); }, [](double) { return 1.0; }},
      {"-z^3", [](double z) { return 3 * z * z; }, [](double z) { return 6 * z + 9 * std::pow(z, 4); }},
      {"z^2/2", [](double z) { return -z; }, [](double z) { return -1 + z * z; }},
  };
  for (const Case& c : cases) {
    const Extraction ex = extract_f(sampled(warped_family(c.theta)));
    ASSERT_TRUE(ex.scalars) << c.theta << ": " << ex.error;
    for (const double z : {-1.0, 0.0, 1.0, 0.37}) {
      EXPECT_NEAR(at(ex.scalars->f, 0.3, -0.2, z), c.f(z), 1e-12) << c.theta;
      EXPECT_NEAR(at(ex.scalars->f_tilde, 0.3, -0.2, z), c.f_tilde(z), 1e-12) << c.theta;
    }
    EXPECT_LE(residual(ex.report, "f_consistency"), 1e-9);
    EXPECT_LE(residual(ex.report, "df_wedge_eta"), 1e-9);
    EXPECT_LE(residual(ex.report, "form_equation"), 1e-9);
  }
  const Extraction kenmotsu = extract_f(sampled(warped_family("-z")));
  EXPECT_TRUE(kenmotsu.scalars->f.is_constant(1.0));
  EXPECT_TRUE(kenmotsu.scalars->f_tilde.is_constant(1.0));
}

TEST(ExtractF, LogCoshFTildeSimplifiesToOne) {
  const Extraction ex = extract_f(sampled(warped_family("-ln(cosh(z))")));
  ASSERT_TRUE(ex.scalars);
  for (const double z : {-1.0, 0.0, 1.0}) {
    EXPECT_NEAR(at(ex.scalars->f, 0, 0, z), std::tanh(z), 1e-15);
    EXPECT_NEAR(at(ex.scalars->f_tilde, 0, 0, z), 1.0, 1e-14);
  }
}

TEST(ExtractF, Failures) {
  const Extraction sas = extract_f(sampled(sasakian(), 10));
  EXPECT_FALSE(sas.scalars);
  EXPECT_DOUBLE_EQ(residual(sas.report, "d_eta"), 0.5);  // dη = ½ dx∧dy
  EXPECT_NE(sas.error.find("d(eta)"), std::string::npos);

  // θ depending on x: dω has no η∧ω part
  const Extraction tilted = extract_f(sampled(warped_family("x*z"), 10));
  EXPECT_FALSE(tilted.scalars);
  EXPECT_FALSE(tilted.error.empty());
}

TEST(Classify, WarpedFamily) {
  const ClassificationReport flat = classify(sampled(warped_family("0")));
  EXPECT_EQ(flat.label, "cosymplectic");
  EXPECT_TRUE(flat.cosymplectic && flat.almost_cosymplectic && flat.normal && flat.f_cosymplectic);
  EXPECT_FALSE(flat.kenmotsu_type);
  EXPECT_EQ(flat.alpha, 0.0);

  const ClassificationReport ken = classify(sampled(warped_family("-z")));
  EXPECT_EQ(ken.label, "α-cosymplectic (Kenmotsu-type), f = 1");
  EXPECT_TRUE(ken.kenmotsu_type && ken.alpha_cosymplectic && ken.f_cosymplectic);
  EXPECT_FALSE(ken.cosymplectic || ken.almost_cosymplectic);
  EXPECT_EQ(ken.alpha, 1.0);
  EXPECT_TRUE(ken.report.passed());

  const ClassificationReport lc = classify(sampled(warped_family("-ln(cosh(z))")));
  EXPECT_EQ(lc.label, "f-cosymplectic");
  EXPECT_TRUE(lc.f_cosymplectic && lc.normal && lc.almost_f_cosymplectic);
  EXPECT_FALSE(lc.alpha_cosymplectic || lc.kenmotsu_type || lc.alpha);
  EXPECT_TRUE(lc.report.passed());

  const ClassificationReport k2 = classify(sampled(warped_family("-2*z")));
  EXPECT_EQ(k2.label, "α-cosymplectic (Kenmotsu-type), f = 2");
}

TEST(Classify, FlagsAreConsistent) {
  for (const char* theta : {"0", "-z", "-ln(cosh(z))", "3*z", "-z^3"}) {
    const ClassificationReport c = classify(sampled(warped_family(theta), 20));
    EXPECT_TRUE(!c.cosymplectic || (c.normal && c.almost_cosymplectic)) << theta;
    EXPECT_TRUE(!c.kenmotsu_type || (c.normal && c.alpha && *c.alpha != 0.0)) << theta;
    EXPECT_TRUE(!c.f_cosymplectic || (c.normal && c.almost_f_cosymplectic)) << theta;
    EXPECT_TRUE(!c.almost_cosymplectic || c.almost_alpha_cosymplectic) << theta;
  }
}

TEST(Classify, NonStructures) {
  const ClassificationReport sas = classify(sampled(sasakian(), 10));
  EXPECT_EQ(sas.label, "not almost f-cosymplectic");
  EXPECT_TRUE(sas.normal);
  EXPECT_FALSE(sas.report.passed());

  AlmostContactStructure bad = warped_family("-z");
  bad.xi = VectorField{{0.0, 0.0, 2.0}};
  const ClassificationReport b = classify(sampled(bad, 10));
  EXPECT_EQ(b.label, "not an almost contact metric structure");
  EXPECT_FALSE(b.almost_f_cosymplectic);
}

TEST(Classify, NonNormalAlmostCosymplectic) {
  const ClassificationReport r = classify(sampled(tilted()));
  EXPECT_EQ(r.label, "almost cosymplectic");
  EXPECT_TRUE(r.almost_cosymplectic && r.almost_f_cosymplectic);
  EXPECT_FALSE(r.normal || r.f_cosymplectic || r.cosymplectic);
  EXPECT_FALSE(r.report.passed());
  EXPECT_GT(residual(r.report, "nijenhuis"), 1e-3);
}

TEST(Identities, KenmotsuHyperbolic) {
  const SampledStructure ss = sampled(warped_family("-z"));
  const Extraction ex = extract_f(ss);
  const ResidualReport r = verify_structure_identities(ss, *ex.scalars);
  EXPECT_TRUE(r.passed());
  for (const CheckResult& c : r.checks) EXPECT_LE(c.residual, 1e-10) << c.name;
  // Q = −2I on H³(−1)
  for (const LocalGeometry& L : ss.local) {
    const Array<2> q = L.ricci_operator();
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(q(i, j), i == j ? -2.0 : 0.0, 1e-10);
    }
    EXPECT_NEAR(L.scalar, -6.0, 1e-10);
  }
  const ResidualReport r3 = verify_3d_ricci(ss, *ex.scalars);
  EXPECT_LE(residual(r3, "ricci_3d_formula"), 1e-10);
  EXPECT_TRUE(r3.passed());
}

TEST(Identities, FlatAndLogCosh) {
  for (const char* theta : {"0", "-ln(cosh(z))", "-z^3", "0.3*sin(2*z)"}) {
    const SampledStructure ss = sampled(warped_family(theta));
    const Extraction ex = extract_f(ss);
    ASSERT_TRUE(ex.scalars);
    const ResidualReport r = verify_structure_identities(ss, *ex.scalars);
    for (const CheckResult& c : r.checks) {
      EXPECT_LE(c.residual, 1e-7) << theta << " " << c.name;
      EXPECT_FALSE(c.advisory);
    }
    const ResidualReport r3 = verify_3d_ricci(ss, *ex.scalars);
    EXPECT_TRUE(r3.passed()) << theta;
    EXPECT_LE(h_tensor_residual(ss), 1e-8) << theta;
    EXPECT_LE(f_cross_determination_residual(ss, *ex.scalars), 1e-9) << theta;
  }
}

TEST(Identities, CurvatureOnReebAgainstFiniteDifferences) {
  // R(X,Y)ξ = f̃[η(X)Y − η(Y)X] with f̃ = 1, curvature from a difference oracle
  const AlmostContactStructure s = warped_family("-ln(cosh(z))");
  testing::FdGeometry fd(s.g, 1e-3, 1e-3);
  for (const double z : {-0.9, -0.2, 0.0, 0.5, 1.0}) {
    const Point p{0.1, -0.3, z};
    const auto c = fd.curvature(p);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t l = 0; l < 3; ++l) {
          const double expected = (i == 2 ? 1.0 : 0.0) * (l == j) - (j == 2 ? 1.0 : 0.0) * (l == i);
          EXPECT_NEAR(c.riemann[l][i](j, 2), expected, 1e-6);
        }
      }
    }
    // 3D formula at the point: Q = (−3 − R/2)η⊗ξ + (1 + R/2)I
    const Eigen::MatrixXd q = fd.metric(p).inverse() * c.ricci;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const double rhs = (-3.0 - c.scalar / 2) * (i == 2 && j == 2) + (1.0 + c.scalar / 2) * (i == j);
        EXPECT_NEAR(q(i, j), rhs, 1e-6);
      }
    }
  }
}

TEST(Identities, FiveDimensional) {
  for (const char* theta : {"-z", "-ln(cosh(z))", "0.5*z^2"}) {
    const SampledStructure ss = sampled(warped_family_5d(theta), 20);
    const ClassificationReport c = classify(ss);
    ASSERT_TRUE(c.f_cosymplectic) << theta << " " << c.label;
    EXPECT_EQ(ss.s.n(), 2u);
    const ResidualReport r = verify_structure_identities(ss, *c.scalars);
    for (const CheckResult& check : r.checks) EXPECT_LE(check.residual, 1e-7) << theta << " " << check.name;
    EXPECT_LE(f_cross_determination_residual(ss, *c.scalars), 1e-9);
    EXPECT_LE(h_tensor_residual(ss), 1e-8);
    EXPECT_THROW(verify_3d_ricci(ss, *c.scalars), std::invalid_argument);
  }
  // Qξ = −4ξ on H⁵(−1)
  const SampledStructure h5 = sampled(warped_family_5d("-z"), 5);
  for (std::size_t k = 0; k < h5.local.size(); ++k) {
    const Vec q = h5.local[k].apply_ricci_operator(h5.xi[k].v);
    EXPECT_NEAR(q[4], -4.0, 1e-10);
  }
}

TEST(Identities, AdvisoryWhenNotNormal) {
  const SampledStructure ss = sampled(warped_family("-z"), 5);
  const Extraction ex = extract_f(ss);
  const ResidualReport r = verify_structure_identities(ss, *ex.scalars, false);
  for (const CheckResult& c : r.checks) EXPECT_TRUE(c.advisory);
}

TEST(FTildeConstancy, Verdicts) {
  const SampledStructure lc = sampled(warped_family("-ln(cosh(z))"));
  const FTildeConstancyVerdict a = check_ftilde_constancy(lc, *extract_f(lc).scalars);
  EXPECT_TRUE(a.hypothesis && a.asserted && a.passed);
  EXPECT_NEAR(a.f_tilde_min, 1.0, 1e-12);
  EXPECT_NEAR(a.f_tilde_max, 1.0, 1e-12);

  const SampledStructure ken = sampled(warped_family("-z"));
  const FTildeConstancyVerdict b = check_ftilde_constancy(ken, *extract_f(ken).scalars);
  EXPECT_TRUE(b.hypothesis && b.passed);
  EXPECT_EQ(b.grad_f_tilde, 0.0);

  const SampledStructure cubic = sampled(warped_family("-z^3"));
  const StructureScalars sc = *extract_f(cubic).scalars;
  // f = 3z², f̃ = 6z + 9z⁴, ξ(f̃) = 6 + 36z³
  const Expr xi_ft = sym::simplify(directional(cubic.s.xi, sc.f_tilde));
  EXPECT_NEAR(at(xi_ft, 0, 0, 1.0), 42.0, 1e-12);
  const FTildeConstancyVerdict c = check_ftilde_constancy(cubic, sc);
  EXPECT_FALSE(c.hypothesis);
  EXPECT_FALSE(c.asserted);
  EXPECT_TRUE(c.passed);
  EXPECT_GT(c.xi_f_tilde, 1.0);
}

TEST(Laplacian, TwoWays) {
  const AlmostContactStructure flat = flat_model();
  const StructureScalars zero{0.0, 0.0};
  const LaplacianPair a = laplacian_two_ways(flat, zero, E("x^2"), {0.3, 0.1, -0.5});
  EXPECT_NEAR(a.frame_sum, 2.0, 1e-12);
  EXPECT_NEAR(a.coordinate, 2.0, 1e-12);
  EXPECT_FALSE(a.reeb_formula);

  const LaplacianPair c = laplacian_two_ways(flat, zero, 5.0, {0.3, 0.1, -0.5});
  EXPECT_EQ(c.frame_sum, 0.0);
  EXPECT_EQ(c.coordinate, 0.0);

  // θ = −z: ΔF = F″ + 2F′ for F = F(z), by hand from √det g = e^{2z}
  const AlmostContactStructure ken = warped_family("-z");
  const StructureScalars one{1.0, 1.0};
  for (const double z : {-0.8, 0.0, 0.6}) {
    const LaplacianPair l = laplacian_two_ways(ken, one, E("sin(z)"), {0.2, 0.4, z});
    const double expected = -std::sin(z) + 2 * std::cos(z);
    EXPECT_NEAR(l.frame_sum, expected, 1e-9);
    EXPECT_NEAR(l.coordinate, expected, 1e-9);
    ASSERT_TRUE(l.reeb_formula);
    EXPECT_NEAR(*l.reeb_formula, expected, 1e-9);
  }

  // F depending on x as well, log-cosh family
  const AlmostContactStructure lc = warped_family("-ln(cosh(z))");
  const SampledStructure ss = sampled(lc, 10);
  const StructureScalars sc = *extract_f(ss).scalars;
  for (const Point& p : ss.samples.points) {
    const LaplacianPair l = laplacian_two_ways(lc, sc, E("x*exp(z) + y^2"), p);
    EXPECT_NEAR(l.frame_sum, l.coordinate, 1e-9);
    EXPECT_FALSE(l.reeb_formula);
    const LaplacianPair m = laplacian_two_ways(lc, sc, E("z^3"), p);
    ASSERT_TRUE(m.reeb_formula);
    EXPECT_NEAR(m.frame_sum, *m.reeb_formula, 1e-9);
  }
}

TEST(Sampling, DeterministicAndRedrawsOutsideDomain) {
  const AlmostContactStructure s = warped_family("-sqrt(z)");
  SampleConfig config;
  config.count = 20;
  const SampledStructure a = sample_structure(s, config);
  const SampledStructure b = sample_structure(s, config);
  EXPECT_EQ(a.samples.points, b.samples.points);
  EXPECT_GT(a.samples.rejected, 0u);
  EXPECT_EQ(a.local.size(), 20u);
  for (const Point& p : a.samples.points) EXPECT_GT(p[2], 0.0);
}

}  // namespace
}  // namespace acm
