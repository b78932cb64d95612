#include <gtest/gtest.h>

#include <cmath>

#include "acm/geometry.hpp"
#include "acm/simplify.hpp"
#include "acm/soliton.hpp"
#include "support/random_metric.hpp"

namespace acm {
namespace {

const Chart kXyz({"x", "y", "z"});

Expr E(const char* s) { return kXyz.parse(s); }

AlmostContactStructure warped_family(const char* theta) {
  const Expr w = sym::simplify(sym::exp(-2.0 * E(theta)));
  MetricField g({{w, 0.0, 0.0}, {0.0, w, 0.0}, {0.0, 0.0, 1.0}});
  Tensor11 phi{{{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
  return AlmostContactStructure(kXyz, g, phi, VectorField{{0.0, 0.0, 1.0}}, OneForm{{0.0, 0.0, 1.0}});
}

MetricField flat() { return MetricField({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}); }

// Hamilton's cigar times a line: a steady gradient soliton with curvature.
MetricField cigar() {
  const Expr w = E("1/(1 + x^2 + y^2)");
  return MetricField({{w, 0.0, 0.0}, {0.0, w, 0.0}, {0.0, 0.0, 1.0}});
}

SampleConfig config(std::size_t count = 50) {
  SampleConfig c;
  c.count = count;
  return c;
}

SampledStructure sampled(const AlmostContactStructure& s, std::size_t count = 50) {
  return sample_structure(s, config(count));
}

double value(const ResidualReport& r) { return r.checks.at(0).residual; }

struct Gradient {
  SampledMetric sm;
  SolitonField v;
};

Gradient gradient_case(const MetricField& g, const char* potential, double lambda) {
  const SolitonSpec spec = SolitonSpec::gradient(E(potential), lambda);
  SampledMetric sm = sample_metric(g, config(), soliton_domain_probe(spec, 3));
  SolitonField v = soliton_field(sm, spec);
  return {std::move(sm), std::move(v)};
}

TEST(Spec, Constructors) {
  const SolitonSpec c = SolitonSpec::contact();
  EXPECT_EQ(c.kind, SolitonKind::Contact);
  EXPECT_FALSE(c.lambda);
  EXPECT_EQ(SolitonSpec::gradient(E("x"), 2.0).lambda, 2.0);
  EXPECT_STREQ(to_string(SolitonKind::Vector), "vector");
  const SampledMetric sm = sample_metric(flat(), config(3));
  EXPECT_THROW(soliton_field(sm, SolitonSpec::contact(0.0)), std::invalid_argument);
  EXPECT_THROW(soliton_field(sm, SolitonSpec::vector(VectorField{{0.0}}, 0.0)), std::invalid_argument);
}

TEST(SolitonResidual, GaussianSoliton) {
  for (const double lambda : {1.5, -0.5, 0.0}) {
    const std::string f = std::to_string(lambda) + "*(x^2 + y^2 + z^2)/2";
    const Gradient c = gradient_case(flat(), f.c_str(), lambda);
    EXPECT_LE(value(soliton_residual(c.sm, c.v, lambda)), 1e-12);
    EXPECT_LE(value(gradient_residual(c.sm, c.v, lambda)), 1e-12);
    EXPECT_LE(value(soliton_residual(c.sm, c.v, lambda + 0.25)), 0.25 + 1e-12);
    EXPECT_GE(value(soliton_residual(c.sm, c.v, lambda + 0.25)), 0.25 - 1e-12);
  }
  // the same soliton through its vector field V = λ(x, y, z)
  const SolitonSpec spec = SolitonSpec::vector(VectorField{{E("2*x"), E("2*y"), E("2*z")}}, 2.0);
  const SampledMetric sm = sample_metric(flat(), config());
  EXPECT_EQ(value(soliton_residual(sm, soliton_field(sm, spec), 2.0)), 0.0);
}

TEST(SolitonResidual, KenmotsuEinsteinWithConstantPotential) {
  const AlmostContactStructure s = warped_family("-z");
  const Gradient c = gradient_case(s.g, "7", -2.0);
  EXPECT_LE(value(soliton_residual(c.sm, c.v, -2.0)), 1e-12);
  EXPECT_LE(value(gradient_residual(c.sm, c.v, -2.0)), 1e-12);
}

TEST(SolitonResidual, ContactKindOnKenmotsuFails) {
  // ½L_ξ g + Ric + 2g = f(g − η⊗η) with f = 1: largest entry g_xx = e^{2z}
  const SampledStructure ss = sampled(warped_family("-z"));
  const SampledMetric sm = as_sampled_metric(ss);
  const SolitonField xi = soliton_field(sm, SolitonSpec::contact(-2.0), &ss.s);
  double expected = 0.0;
  for (const Point& p : ss.samples.points) expected = std::max(expected, std::exp(2.0 * p[2]));
  EXPECT_NEAR(value(soliton_residual(sm, xi, -2.0)), expected, 1e-12);
  EXPECT_FALSE(soliton_residual(sm, xi, -2.0).passed());

  const SymTensor2 t = soliton_tensor(ss.s.g, ss.s.xi, -2.0);
  EXPECT_TRUE(sym::simplify(t(0, 0) - E("exp(2*z)")).is_constant(0.0)) << sym::to_string(t(0, 0));
  EXPECT_TRUE(t(2, 2).is_constant(0.0));
  EXPECT_TRUE(t(0, 1).is_constant(0.0));
}

TEST(GradientResidual, NonSolitonOnFlat) {
  // Hess x² = diag(2, 0, 0), minus g gives entries 1, −1, −1
  const Gradient c = gradient_case(flat(), "x^2", 1.0);
  EXPECT_DOUBLE_EQ(value(gradient_residual(c.sm, c.v, 1.0)), 1.0);
  EXPECT_DOUBLE_EQ(value(soliton_residual(c.sm, c.v, 1.0)), 1.0);
  EXPECT_THROW(gradient_residual(c.sm, SolitonField{}, 1.0), std::invalid_argument);
}

TEST(GradientResidual, AgreesWithSolitonResidualOnRandomMetrics) {
  // ½L_{DF} g = Hess F for every metric and potential
  testing::RandomMetricGenerator gen(77);
  for (int trial = 0; trial < 10; ++trial) {
    const MetricField g = gen.generate(3);
    const Chart chart(testing::coordinate_names(3));
    const SolitonSpec spec = SolitonSpec::gradient(chart.parse("u0*u1 + sin(u2) - u0^2/3"), 0.7);
    const SampledMetric sm = sample_metric(g, config(10), soliton_domain_probe(spec, 3));
    const SolitonField v = soliton_field(sm, spec);
    for (const double lambda : {0.7, -1.0}) {
      EXPECT_NEAR(value(soliton_residual(sm, v, lambda)), value(gradient_residual(sm, v, lambda)), 1e-10);
    }
  }
}

TEST(SolveContactLambda, Examples) {
  const auto flat_lambda = solve_contact_lambda(sampled(warped_family("0")));
  ASSERT_TRUE(flat_lambda);
  EXPECT_EQ(*flat_lambda, 0.0);
  EXPECT_FALSE(solve_contact_lambda(sampled(warped_family("-z"))));
  EXPECT_FALSE(solve_contact_lambda(sampled(warped_family("-ln(cosh(z))"))));
  EXPECT_FALSE(solve_contact_lambda(sampled(warped_family("-2*z"))));
}

TEST(SolveContactLambda, NoLambdaOnGridForLogCosh) {
  const SampledStructure ss = sampled(warped_family("-ln(cosh(z))"));
  const SampledMetric sm = as_sampled_metric(ss);
  const SolitonField xi = soliton_field(sm, SolitonSpec::contact(), &ss.s);
  for (double lambda = -5.0; lambda <= 5.0; lambda += 0.125) {
    EXPECT_GT(value(soliton_residual(sm, xi, lambda)), 0.1) << lambda;
  }
}

TEST(ClassifyLambda, Signs) {
  EXPECT_EQ(classify_lambda(1.0), LambdaType::Shrinking);
  EXPECT_EQ(classify_lambda(0.0), LambdaType::Steady);
  EXPECT_EQ(classify_lambda(-2.0), LambdaType::Expanding);
  EXPECT_EQ(classify_lambda(5e-13), LambdaType::Steady);
  EXPECT_EQ(classify_lambda(-5e-13), LambdaType::Steady);
  EXPECT_EQ(classify_lambda(1e-3, 1e-2), LambdaType::Steady);
  EXPECT_STREQ(to_string(LambdaType::Expanding), "expanding");
}

TEST(Cho, GaussianEinsteinAndCigar) {
  const Gradient gauss = gradient_case(flat(), "0.75*(x^2 + y^2 + z^2)", 1.5);
  EXPECT_LE(cho_residual(gauss.sm, gauss.v, 1.5), 1e-10);

  const Gradient einstein = gradient_case(warped_family("-z").g, "1", -2.0);
  EXPECT_LE(cho_residual(einstein.sm, einstein.v, -2.0), 1e-10);

  const Gradient cig = gradient_case(cigar(), "-ln(1 + x^2 + y^2)", 0.0);
  ASSERT_LE(value(soliton_residual(cig.sm, cig.v, 0.0)), 1e-10);
  EXPECT_LE(cho_residual(cig.sm, cig.v, 0.0), 1e-9);
  EXPECT_LE(hamilton_residual(cig.sm, cig.v), 1e-9);

  // a wrong-sign potential is not a soliton and the relation fails
  const Gradient wrong = gradient_case(cigar(), "ln(1 + x^2 + y^2)", 0.0);
  EXPECT_GT(cho_residual(wrong.sm, wrong.v, 0.0), 1e-2);
}

TEST(Cho, ContactOnKenmotsu) {
  // ½‖2f(g − η⊗η)‖² = 4 and div(λξ − Qξ) = div(−2ξ + 2ξ) = 0
  const SampledStructure ss = sampled(warped_family("-z"));
  const SampledMetric sm = as_sampled_metric(ss);
  const SolitonField xi = soliton_field(sm, SolitonSpec::contact(), &ss.s);
  EXPECT_NEAR(cho_residual(sm, xi, -2.0), 4.0, 1e-10);
}

TEST(Hamilton, Examples) {
  const Gradient gauss = gradient_case(flat(), "0.5*(x^2 + y^2 + z^2)", 1.0);
  EXPECT_EQ(hamilton_residual(gauss.sm, gauss.v), 0.0);
  const Gradient einstein = gradient_case(warped_family("-z").g, "3", -2.0);
  EXPECT_LE(hamilton_residual(einstein.sm, einstein.v), 1e-12);
  const Gradient nonsoliton = gradient_case(flat(), "x^2", 1.0);
  EXPECT_EQ(hamilton_residual(nonsoliton.sm, nonsoliton.v), 0.0);
}

TEST(ReebScalarRelation, Examples) {
  const SampledStructure flat_s = sampled(warped_family("0"));
  EXPECT_EQ(reeb_scalar_relation_residual(flat_s, *extract_f(flat_s).scalars), 0.0);

  const SampledStructure ken = sampled(warped_family("-z"));
  EXPECT_LE(reeb_scalar_relation_residual(ken, *extract_f(ken).scalars), 1e-10);

  // f = tanh z, f̃ = 1, R = −4 − 2tanh²z: −2t(1 − t²) + 2(1 − t²)t = 0 term by term
  const SampledStructure lc = sampled(warped_family("-ln(cosh(z))"));
  EXPECT_LE(reeb_scalar_relation_residual(lc, *extract_f(lc).scalars), 1e-10);

  // No soliton is needed: the relation holds across the whole family.
  for (const char* theta : {"-z^3", "0.4*sin(2*z)", "z^2/2 - z"}) {
    const SampledStructure ss = sampled(warped_family(theta));
    EXPECT_LE(reeb_scalar_relation_residual(ss, *extract_f(ss).scalars), 1e-9) << theta;
  }
}

TEST(Einstein, Examples) {
  const EinsteinVerdict h = einstein_check(sample_metric(warped_family("-z").g, config()));
  EXPECT_TRUE(h.passed);
  ASSERT_TRUE(h.constant);
  EXPECT_NEAR(*h.constant, -2.0, 1e-12);

  const EinsteinVerdict f = einstein_check(sample_metric(flat(), config()));
  EXPECT_TRUE(f.passed);
  EXPECT_EQ(f.constant, 0.0);

  const SampledMetric lc = sample_metric(warped_family("-ln(cosh(z))").g, config());
  const EinsteinVerdict e = einstein_check(lc);
  EXPECT_FALSE(e.passed);
  EXPECT_FALSE(e.constant);
  for (const LocalGeometry& L : lc.local) {
    const double t = std::tanh(L.p[2]);
    EXPECT_NEAR(L.scalar, -4.0 - 2.0 * t * t, 1e-10);
  }
}

TEST(Theorem, ContactOnFlatCosymplectic) {
  const SampledStructure ss = sampled(warped_family("0"));
  const TheoremVerdict v = theorem_report(ss, *extract_f(ss).scalars, SolitonSpec::contact(0.0), 0.0);
  EXPECT_TRUE(v.hypotheses);
  EXPECT_EQ(v.branch, "ricci_flat");
  EXPECT_TRUE(v.report.passed());
  for (const char* name : {"soliton", "f_vanishes", "lambda_zero", "ricci_flat"}) {
    ASSERT_NE(v.report.find(name), nullptr) << name;
    EXPECT_FALSE(v.report.find(name)->advisory);
  }
}

TEST(Theorem, GradientEinsteinBranch) {
  const SampledStructure ss = sampled(warped_family("-z"));
  const StructureScalars sc = *extract_f(ss).scalars;
  const TheoremVerdict v = theorem_report(ss, sc, SolitonSpec::gradient(1.0, -2.0), -2.0);
  EXPECT_TRUE(v.hypotheses);
  EXPECT_EQ(v.branch, "einstein");
  EXPECT_TRUE(v.report.passed());
  // R = 2n(λ − f̃) = 2(−2 − 1) = −6 and Q = −2f̃ I = −2I
  EXPECT_LE(v.report.find("scalar_curvature_formula")->residual, 1e-10);
  EXPECT_LE(v.report.find("ricci_operator_formula")->residual, 1e-10);
  EXPECT_LE(v.report.find("einstein")->residual, 1e-10);
}

TEST(Theorem, WrongLambdaDeclines) {
  const SampledStructure ss = sampled(warped_family("-z"));
  const TheoremVerdict v = theorem_report(ss, *extract_f(ss).scalars, SolitonSpec::gradient(1.0, 1.0), 1.0);
  EXPECT_FALSE(v.hypotheses);
  EXPECT_FALSE(v.report.passed());
  // Ric − λg = −3g, largest entry 3e^{2z}
  double expected = 0.0;
  for (const Point& p : ss.samples.points) expected = std::max(expected, 3.0 * std::exp(2.0 * p[2]));
  EXPECT_NEAR(v.report.find("soliton")->residual, expected, 1e-12);
  for (const CheckResult& c : v.report.checks) {
    if (c.name != "soliton") {
      EXPECT_TRUE(c.advisory) << c.name;
    }
  }
}

TEST(Theorem, GaussianOnFlatIsCosymplecticBranch) {
  const SampledStructure ss = sampled(warped_family("0"));
  const TheoremVerdict v =
      theorem_report(ss, *extract_f(ss).scalars, SolitonSpec::gradient(E("(x^2 + y^2 + z^2)/2"), 1.0), 1.0);
  EXPECT_TRUE(v.hypotheses);
  EXPECT_EQ(v.branch, "cosymplectic");
  EXPECT_TRUE(v.report.passed());
}

TEST(Properties, ChoAndBianchiOnPassingSpecs) {
  struct Case {
    MetricField g;
    const char* potential;
    double lambda;
  };
  const Case cases[] = {
      {flat(), "0.5*(x^2 + y^2 + z^2)", 1.0},
      {flat(), "-1.25*(x^2 + y^2 + z^2)", -2.5},
      {warped_family("-z").g, "0", -2.0},
      {warped_family("-2*z").g, "0", -8.0},
      {cigar(), "-ln(1 + x^2 + y^2)", 0.0},
  };
  for (const Case& c : cases) {
    const SolitonSpec spec = SolitonSpec::gradient(E(c.potential), c.lambda);
    const SampledMetric sm = sample_metric(c.g, config(), soliton_domain_probe(spec, 3));
    const SolitonField v = soliton_field(sm, spec);
    ASSERT_TRUE(soliton_residual(sm, v, c.lambda).passed()) << c.potential;
    EXPECT_LE(cho_residual(sm, v, c.lambda), 1e-7) << c.potential;
    EXPECT_LE(hamilton_residual(sm, v), 1e-7) << c.potential;
    for (const LocalGeometry& L : sm.local) {
      for (std::size_t a = 0; a < 3; ++a) {
        Vec z(3, 0.0);
        z[a] = 1.0;
        EXPECT_LE(contracted_bianchi_residual(L, z), 1e-6);
      }
    }
  }
}

}  // namespace
}  // namespace acm
