#include "acm/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "acm/simplify.hpp"

namespace acm {

namespace {

Expr z_var() { return xyz_chart().coordinate(2); }

// a·(z − z0), folded so that a = 1 and z0 = 0 leave plain z.
Expr shifted(double a, double z0) { return sym::simplify(a * (z_var() - z0)); }

std::string kenmotsu_label(double alpha) {
  if (alpha == 0.0) return "cosymplectic";
  return "α-cosymplectic (Kenmotsu-type), f = " + format_constant(alpha);
}

double require_finite(const std::optional<double>& v, double fallback, const char* what) {
  const double x = v.value_or(fallback);
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
  return x;
}

}  // namespace

const Chart& xyz_chart() {
  static const Chart chart({"x", "y", "z"});
  return chart;
}

AlmostContactStructure warped_example(const Expr& theta) {
  if (sym::depends_on(theta, 0) || sym::depends_on(theta, 1)) {
    throw std::invalid_argument("theta must depend on z only: " + sym::to_string(theta));
  }
  const Expr w = sym::simplify(sym::exp(-2.0 * theta));
  MetricField g({{w, 0.0, 0.0}, {0.0, w, 0.0}, {0.0, 0.0, 1.0}});
  Tensor11 phi{{{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
  return AlmostContactStructure(xyz_chart(), std::move(g), std::move(phi), VectorField{{0.0, 0.0, 1.0}},
                                OneForm{{0.0, 0.0, 1.0}});
}

AlmostContactStructure warped_example(std::string_view theta) { return warped_example(xyz_chart().parse(theta)); }

std::vector<VectorField> warped_frame(const Expr& theta) {
  const Expr e = sym::simplify(sym::exp(theta));
  return {VectorField{{e, 0.0, 0.0}}, VectorField{{0.0, e, 0.0}}, VectorField{{0.0, 0.0, 1.0}}};
}

const char* to_string(OdeBranch b) {
  switch (b) {
    case OdeBranch::Positive: return "positive";
    case OdeBranch::Constant: return "constant";
    case OdeBranch::Zero: return "zero";
    case OdeBranch::Negative: return "negative";
  }
  return "?";
}

std::pair<double, double> OdeSolution::sample_range() const {
  const double lo = std::max(interval.first, -1.0);
  const double hi = std::min(interval.second, 1.0);
  if (lo < hi) return {lo, hi};
  return {interval.first, std::min(interval.second, interval.first + 1.0)};
}

OdeSolution ode_closed_form(double c, double z0, std::optional<OdeBranch> branch, double additive) {
  if (!std::isfinite(c) || !std::isfinite(z0) || !std::isfinite(additive)) {
    throw std::invalid_argument("ODE parameters must be finite");
  }
  OdeSolution s;
  s.c = c;
  s.z0 = z0;
  s.additive = additive;
  s.branch = branch.value_or(c > 0 ? OdeBranch::Positive : c == 0 ? OdeBranch::Constant : OdeBranch::Negative);
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double a = std::sqrt(std::fabs(c));
  Expr theta;
  switch (s.branch) {
    case OdeBranch::Positive:
      if (!(c > 0)) throw std::invalid_argument("the tanh branch needs c > 0");
      theta = -sym::ln(sym::cosh(shifted(a, z0)));
      s.f = sym::simplify(a * sym::tanh(shifted(a, z0)));
      s.interval = {-inf, inf};
      break;
    case OdeBranch::Constant:
      if (c < 0) throw std::invalid_argument("the constant branch needs c >= 0");
      theta = sym::simplify(-a * z_var());
      s.f = Expr(a);
      s.interval = {-inf, inf};
      break;
    case OdeBranch::Zero:
      if (c != 0) throw std::invalid_argument("the pole branch needs c = 0");
      theta = -sym::ln(shifted(1.0, z0));
      s.f = sym::simplify(1.0 / shifted(1.0, z0));
      s.interval = {z0 + kPoleMargin, inf};
      break;
    case OdeBranch::Negative:
      if (!(c < 0)) throw std::invalid_argument("the tan branch needs c < 0");
      theta = -sym::ln(sym::cos(shifted(a, z0)));
      s.f = sym::simplify(-a * sym::tan(shifted(a, z0)));
      s.interval = {z0 - std::numbers::pi / (2 * a) + kPoleMargin, z0 + std::numbers::pi / (2 * a) - kPoleMargin};
      break;
  }
  s.theta = sym::simplify(theta + additive);
  return s;
}

OdeTable ode_integrate(double c, double f0, double z_begin, double z_end, double step, double bound) {
  if (!(step > 0)) throw std::invalid_argument("step must be positive");
  const auto rhs = [c](double f) { return c - f * f; };
  const double dir = z_end >= z_begin ? 1.0 : -1.0;
  const double h = dir * step;
  const auto steps = static_cast<std::size_t>(std::ceil(std::fabs(z_end - z_begin) / step - 1e-9));
  OdeTable t;
  double f = f0;
  t.z.push_back(z_begin);
  t.f.push_back(f);
  t.df.push_back(rhs(f));
  for (std::size_t k = 1; k <= steps; ++k) {
    const double z = z_begin + h * static_cast<double>(k - 1);
    const double dz = k == steps ? (z_end - z) : h;
    const double k1 = rhs(f);
    const double k2 = rhs(f + 0.5 * dz * k1);
    const double k3 = rhs(f + 0.5 * dz * k2);
    const double k4 = rhs(f + dz * k3);
    f += dz / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (!std::isfinite(f) || std::fabs(f) > bound) {
      t.blew_up = true;
      break;
    }
    t.z.push_back(k == steps ? z_end : z_begin + h * static_cast<double>(k));
    t.f.push_back(f);
    t.df.push_back(rhs(f));
  }
  return t;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"flat_cosymplectic", "gaussian_soliton_flat", "kenmotsu_alpha",
                                              "kenmotsu_einstein_soliton", "fcosy_tanh"};
  return names;
}

Scenario theta_scenario(const Expr& theta) {
  return Scenario{"theta", theta, warped_example(theta), std::nullopt, {}, {}};
}

Scenario builtin(const std::string& name, const BuiltinParams& params) {
  const Chart& chart = xyz_chart();
  if (name == "flat_cosymplectic") {
    Scenario s = theta_scenario(Expr(0.0));
    s.name = name;
    s.expected.label = "cosymplectic";
    s.expected.f_tilde = 0.0;
    s.expected.contact_soliton = true;
    s.expected.einstein_constant = 0.0;
    s.expected.scalar_curvature = 0.0;
    return s;
  }
  if (name == "gaussian_soliton_flat") {
    const double lambda = require_finite(params.lambda, 1.0, "lambda");
    Scenario s = builtin("flat_cosymplectic");
    s.name = name;
    const Expr r2 = chart.parse("x^2 + y^2 + z^2");
    s.soliton = SolitonSpec::gradient(sym::simplify(lambda / 2.0 * r2), lambda);
    s.expected.soliton_lambda = lambda;
    s.expected.lambda_type = classify_lambda(lambda);
    return s;
  }
  if (name == "kenmotsu_alpha" || name == "kenmotsu_einstein_soliton") {
    const double alpha = require_finite(params.alpha, 1.0, "alpha");
    Scenario s = theta_scenario(sym::simplify(-alpha * z_var()));
    s.name = name;
    s.expected.label = kenmotsu_label(alpha);
    s.expected.f_tilde = alpha * alpha;
    s.expected.contact_soliton = alpha == 0.0;
    s.expected.einstein_constant = -2.0 * alpha * alpha;
    s.expected.scalar_curvature = -6.0 * alpha * alpha;
    if (name == "kenmotsu_einstein_soliton") {
      const double lambda = -2.0 * alpha * alpha;
      s.soliton = SolitonSpec::gradient(Expr(0.0), lambda);
      s.expected.soliton_lambda = lambda;
      s.expected.lambda_type = classify_lambda(lambda);
    }
    return s;
  }
  if (name == "fcosy_tanh") {
    const double c = require_finite(params.c, 1.0, "c");
    if (!(c > 0)) throw std::invalid_argument("fcosy_tanh needs c > 0");
    const OdeSolution sol = ode_closed_form(c);
    Scenario s = theta_scenario(sol.theta);
    s.name = name;
    s.expected.label = "f-cosymplectic";
    s.expected.f_tilde = c;
    s.expected.contact_soliton = false;
    return s;
  }
  throw std::invalid_argument("unknown builtin '" + name + "'");
}

}  // namespace acm
