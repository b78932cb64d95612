#include "acm/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "acm/geometry.hpp"
#include "acm/simplify.hpp"

namespace acm {

namespace {

ResidualReport empty_report(const SampledMetric& sm) {
  ResidualReport r;
  r.seed = sm.samples.seed;
  r.samples = sm.samples.points.size();
  r.rejected = sm.samples.rejected;
  return r;
}

void require_gradient(const SolitonField& v) {
  if (v.kind != SolitonKind::Gradient) throw std::invalid_argument("a potential function is required (gradient kind)");
}

// Jet of QV, with (QV)^i = g^{ik} Ric_kj V^j.
VectorJet ricci_applied(const LocalGeometry& L, const VectorJet& v) {
  const std::size_t n = L.n;
  VectorJet q{Vec(n, 0.0), Array<2>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        q.v[i] += L.ginv(i, k) * L.ricci(k, j) * v.v[j];
        for (std::size_t a = 0; a < n; ++a) {
          q.d(a, i) += L.dginv(a, i, k) * L.ricci(k, j) * v.v[j] + L.ginv(i, k) * L.dricci(a, k, j) * v.v[j] +
                       L.ginv(i, k) * L.ricci(k, j) * v.d(a, j);
        }
      }
    }
  }
  return q;
}

double derivative_along(std::span<const double> x, std::span<const double> d) {
  double s = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) s += x[a] * d[a];
  return s;
}

}  // namespace

SolitonSpec SolitonSpec::contact(std::optional<double> lambda) {
  SolitonSpec s;
  s.kind = SolitonKind::Contact;
  s.lambda = lambda;
  return s;
}

SolitonSpec SolitonSpec::gradient(Expr potential, double lambda) {
  SolitonSpec s;
  s.kind = SolitonKind::Gradient;
  s.potential = std::move(potential);
  s.lambda = lambda;
  return s;
}

SolitonSpec SolitonSpec::vector(VectorField field, double lambda) {
  SolitonSpec s;
  s.kind = SolitonKind::Vector;
  s.field = std::move(field);
  s.lambda = lambda;
  return s;
}

const char* to_string(SolitonKind kind) {
  switch (kind) {
    case SolitonKind::Contact: return "contact";
    case SolitonKind::Gradient: return "gradient";
    case SolitonKind::Vector: return "vector";
  }
  return "?";
}

SampledMetric sample_metric(const MetricField& g, const SampleConfig& config,
                            const std::function<void(const Point&)>& extra) {
  SampledMetric sm{g, {}, {}, config.tolerance};
  const MetricJets jets(g);
  sm.samples = draw_samples(config, g.dim(), [&](const Point& p) {
    LocalGeometry L = jets.at(p);
    if (extra) extra(p);
    sm.local.push_back(std::move(L));
    return true;
  });
  return sm;
}

SampledMetric as_sampled_metric(const SampledStructure& ss) { return {ss.s.g, ss.samples, ss.local, ss.tolerance}; }

std::function<void(const Point&)> soliton_domain_probe(const SolitonSpec& spec, std::size_t dim) {
  switch (spec.kind) {
    case SolitonKind::Gradient: {
      auto f = std::make_shared<ScalarField>(spec.potential, dim);
      return [f](const Point& p) { f->at(p); };
    }
    case SolitonKind::Vector: {
      if (spec.field.dim() != dim) throw std::invalid_argument("soliton vector field has the wrong dimension");
      auto v = std::make_shared<VectorFieldJets>(spec.field);
      return [v](const Point& p) { v->at(p); };
    }
    case SolitonKind::Contact: break;
  }
  return {};
}

SolitonField soliton_field(const SampledMetric& sm, const SolitonSpec& spec, const AlmostContactStructure* structure) {
  SolitonField out;
  out.kind = spec.kind;
  const std::size_t n = sm.g.dim();
  const auto& points = sm.samples.points;
  switch (spec.kind) {
    case SolitonKind::Contact: {
      if (!structure) throw std::invalid_argument("a contact soliton needs an almost contact structure");
      const VectorFieldJets xi(structure->xi);
      for (const Point& p : points) out.v.push_back(xi.at(p));
      break;
    }
    case SolitonKind::Gradient: {
      const ScalarField f(spec.potential, n);
      for (std::size_t k = 0; k < points.size(); ++k) {
        out.potential.push_back(f.at(points[k]));
        out.v.push_back(sm.local[k].gradient(out.potential.back()));
      }
      break;
    }
    case SolitonKind::Vector: {
      if (spec.field.dim() != n) throw std::invalid_argument("soliton vector field has the wrong dimension");
      const VectorFieldJets v(spec.field);
      for (const Point& p : points) out.v.push_back(v.at(p));
      break;
    }
  }
  return out;
}

SymTensor2 soliton_tensor(const MetricField& g, const VectorField& v, double lambda) {
  const SymTensor2 lie = lie_derivative_metric(g, v);
  const SymTensor2 ric = ricci(g);
  const std::size_t n = g.dim();
  ExprMatrix m(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = sym::simplify(0.5 * lie(i, j) + ric(i, j) - lambda * g(i, j));
  }
  return SymTensor2{m};
}

ResidualReport soliton_residual(const SampledMetric& sm, const SolitonField& v, double lambda) {
  MaxAbs worst;
  for (std::size_t k = 0; k < sm.local.size(); ++k) {
    const LocalGeometry& L = sm.local[k];
    const Array<2> lie = L.lie_derivative_metric(v.v[k]);
    for (std::size_t i = 0; i < L.n; ++i) {
      for (std::size_t j = 0; j < L.n; ++j) worst.add(0.5 * lie(i, j) + L.ricci(i, j) - lambda * L.g(i, j));
    }
  }
  ResidualReport r = empty_report(sm);
  r.add("soliton", worst.value(), sm.tolerance);
  return r;
}

ResidualReport gradient_residual(const SampledMetric& sm, const SolitonField& v, double lambda) {
  require_gradient(v);
  MaxAbs worst;
  for (std::size_t k = 0; k < sm.local.size(); ++k) {
    const LocalGeometry& L = sm.local[k];
    const Array<2> hess = L.hessian(v.potential[k]);
    for (std::size_t i = 0; i < L.n; ++i) {
      for (std::size_t j = 0; j < L.n; ++j) worst.add(hess(i, j) + L.ricci(i, j) - lambda * L.g(i, j));
    }
  }
  ResidualReport r = empty_report(sm);
  r.add("gradient_soliton", worst.value(), sm.tolerance);
  return r;
}

std::vector<double> contact_lambda_candidates(const SampledStructure& ss) {
  std::vector<double> candidates;
  if (ss.local.empty()) return candidates;
  const SampledMetric sm = as_sampled_metric(ss);
  const SolitonField xi = soliton_field(sm, SolitonSpec::contact(), &ss.s);
  for (std::size_t k = 0; k < sm.local.size(); ++k) {
    const LocalGeometry& L = sm.local[k];
    const Vec& x = xi.v[k].v;
    const Array<2> lie = L.lie_derivative_metric(xi.v[k]);
    double num = 0.0;
    for (std::size_t i = 0; i < L.n; ++i) {
      for (std::size_t j = 0; j < L.n; ++j) num += (0.5 * lie(i, j) + L.ricci(i, j)) * x[i] * x[j];
    }
    candidates.push_back(num / L.inner(x, x));
  }
  return candidates;
}

std::optional<double> solve_contact_lambda(const SampledStructure& ss) {
  const std::vector<double> candidates = contact_lambda_candidates(ss);
  if (candidates.empty()) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(candidates.begin(), candidates.end());
  if (!(*hi - *lo <= ss.tolerance)) return std::nullopt;
  double lambda = 0.0;
  for (double c : candidates) lambda += c;
  lambda /= static_cast<double>(candidates.size());
  if (std::fabs(lambda) <= ss.tolerance) lambda = 0.0;
  const SampledMetric sm = as_sampled_metric(ss);
  if (!soliton_residual(sm, soliton_field(sm, SolitonSpec::contact(), &ss.s), lambda).passed()) return std::nullopt;
  return lambda;
}

LambdaType classify_lambda(double lambda, double band) {
  if (lambda > band) return LambdaType::Shrinking;
  if (lambda < -band) return LambdaType::Expanding;
  return LambdaType::Steady;
}

const char* to_string(LambdaType type) {
  switch (type) {
    case LambdaType::Shrinking: return "shrinking";
    case LambdaType::Steady: return "steady";
    case LambdaType::Expanding: return "expanding";
  }
  return "?";
}

double cho_residual(const SampledMetric& sm, const SolitonField& v, double lambda) {
  MaxAbs worst;
  for (std::size_t k = 0; k < sm.local.size(); ++k) {
    const LocalGeometry& L = sm.local[k];
    const VectorJet& x = v.v[k];
    const double left = 0.5 * L.norm_squared(L.lie_derivative_metric(x));
    const double vr = derivative_along(x.v, L.dscalar);
    const double div = lambda * L.divergence(x) - L.divergence(ricci_applied(L, x));
    worst.add(left - vr - 2.0 * div);
  }
  return worst.value();
}

double hamilton_residual(const SampledMetric& sm, const SolitonField& v) {
  require_gradient(v);
  MaxAbs worst;
  for (std::size_t k = 0; k < sm.local.size(); ++k) {
    const LocalGeometry& L = sm.local[k];
    const Vec& df = v.v[k].v;
    for (std::size_t a = 0; a < L.n; ++a) {
      double ric = 0.0;
      for (std::size_t j = 0; j < L.n; ++j) ric += L.ricci(j, a) * df[j];
      worst.add(L.dscalar[a] - 2.0 * ric);
    }
  }
  return worst.value();
}

double reeb_scalar_relation_residual(const SampledStructure& ss, const StructureScalars& sc) {
  if (ss.s.dim() != 3) throw std::invalid_argument("the Reeb scalar relation needs dim 3");
  const ScalarField ft(sc.f_tilde, 3);
  MaxAbs worst;
  for (std::size_t k = 0; k < ss.local.size(); ++k) {
    const Point& p = ss.samples.points[k];
    const LocalGeometry& L = ss.local[k];
    const ScalarJet j = ft.at(p);
    const Vec& xi = ss.xi[k].v;
    const double f = sym::evaluate(sc.f, p);
    worst.add(2.0 * derivative_along(xi, j.d) + 0.5 * derivative_along(xi, L.dscalar) +
              2.0 * (3.0 * j.v + 0.5 * L.scalar) * f);
  }
  return worst.value();
}

EinsteinVerdict einstein_check(const SampledMetric& sm) {
  EinsteinVerdict v;
  MaxAbs worst;
  double lo = INFINITY, hi = -INFINITY, sum = 0.0;
  for (const LocalGeometry& L : sm.local) {
    const double c = L.scalar / static_cast<double>(L.n);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
    sum += c;
    for (std::size_t i = 0; i < L.n; ++i) {
      for (std::size_t j = 0; j < L.n; ++j) worst.add(L.ricci(i, j) - c * L.g(i, j));
    }
  }
  v.residual = worst.value();
  v.spread = sm.local.empty() ? 0.0 : hi - lo;
  if (std::isnan(lo) || std::isnan(hi)) v.spread = NAN;
  v.passed = v.residual <= sm.tolerance && v.spread <= sm.tolerance;
  if (v.passed && !sm.local.empty()) {
    double c = sum / static_cast<double>(sm.local.size());
    if (std::fabs(c) <= sm.tolerance) c = 0.0;
    v.constant = c;
  }
  return v;
}

TheoremVerdict theorem_report(const SampledStructure& ss, const StructureScalars& sc, const SolitonSpec& spec,
                              double lambda) {
  TheoremVerdict out;
  const SampledMetric sm = as_sampled_metric(ss);
  const SolitonField v = soliton_field(sm, spec, &ss.s);
  out.report = soliton_residual(sm, v, lambda);
  const double tol = ss.tolerance;
  bool hypotheses = out.report.passed();

  MaxAbs f_size;
  for (const Point& p : ss.samples.points) f_size.add(sym::evaluate(sc.f, p));

  switch (spec.kind) {
    case SolitonKind::Vector:
      out.report.notes.push_back("no structural conclusion is drawn for a general vector field");
      out.hypotheses = hypotheses;
      return out;
    case SolitonKind::Contact: {
      const bool advisory = !hypotheses;
      const std::string note = advisory ? "soliton not verified; conclusion not asserted" : "";
      MaxAbs ric;
      for (const LocalGeometry& L : ss.local) {
        for (double x : L.ricci.data()) ric.add(x);
      }
      out.branch = "ricci_flat";
      out.report.add("f_vanishes", f_size.value(), tol, advisory, note);
      out.report.add("lambda_zero", std::fabs(lambda), tol, advisory, note);
      out.report.add("ricci_flat", ric.value(), tol, advisory, note);
      break;
    }
    case SolitonKind::Gradient: {
      const ScalarField ft(sc.f_tilde, ss.s.dim());
      MaxAbs xi_ft;
      for (std::size_t k = 0; k < ss.local.size(); ++k) {
        xi_ft.add(derivative_along(ss.xi[k].v, ft.at(ss.samples.points[k]).d));
      }
      out.report.add("reeb_ftilde", xi_ft.value(), tol, true, "hypothesis xi(f~) = 0");
      hypotheses = hypotheses && xi_ft.value() <= tol;
      const bool advisory = !hypotheses;
      const std::string note = advisory ? "hypotheses not verified; conclusion not asserted" : "";
      if (f_size.value() <= tol) {
        out.branch = "cosymplectic";
        out.report.add("f_vanishes", f_size.value(), tol, advisory, note);
        break;
      }
      out.branch = "einstein";
      const EinsteinVerdict e = einstein_check(sm);
      out.report.add("einstein", std::max(e.residual, e.spread), tol, advisory, note);
      const double two_n = 2.0 * static_cast<double>(ss.s.n());
      MaxAbs scalar, q;
      for (std::size_t k = 0; k < ss.local.size(); ++k) {
        const LocalGeometry& L = ss.local[k];
        const double f_tilde = sym::evaluate(sc.f_tilde, ss.samples.points[k]);
        scalar.add(L.scalar - two_n * (lambda - f_tilde));
        const Array<2> Q = L.ricci_operator();
        for (std::size_t i = 0; i < L.n; ++i) {
          for (std::size_t j = 0; j < L.n; ++j) q.add(Q(i, j) + (i == j ? 2.0 * f_tilde : 0.0));
        }
      }
      out.report.add("scalar_curvature_formula", scalar.value(), tol, advisory, note);
      if (ss.s.n() == 1) out.report.add("ricci_operator_formula", q.value(), tol, advisory, note);
      break;
    }
  }
  out.hypotheses = hypotheses;
  if (!hypotheses) out.report.notes.push_back("hypotheses not verified; conclusions are advisory");
  return out;
}

}  // namespace acm
