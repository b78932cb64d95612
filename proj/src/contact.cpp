#include "acm/contact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "acm/geometry.hpp"
#include "acm/simplify.hpp"

namespace acm {

namespace {

using Mat = Eigen::MatrixXd;
using Col = Eigen::VectorXd;

Mat eval_matrix(const ExprMatrix& m, std::span<const double> p) {
  Mat out(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = sym::evaluate(m[i][j], p);
  }
  return out;
}

Col eval_vector(const std::vector<Expr>& v, std::span<const double> p) {
  Col out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = sym::evaluate(v[i], p);
  return out;
}

Mat to_mat(const Array<2>& a) {
  Mat m(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  }
  return m;
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Max over samples of every component of a form.
double sampled_form_max(const KForm& form, const SampledStructure& ss) {
  MaxAbs worst;
  for (const auto& [idx, value] : form.components()) {
    for (const Point& p : ss.samples.points) worst.add(sym::evaluate(value, p));
  }
  return worst.value();
}

VectorField column(const Tensor11& t, std::size_t j) {
  VectorField v = VectorField::zero(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i) v.c[i] = t(i, j);
  return v;
}

}  // namespace

AlmostContactStructure::AlmostContactStructure(Chart chart_, MetricField g_, Tensor11 phi_, VectorField xi_,
                                               OneForm eta_)
    : chart(std::move(chart_)), g(std::move(g_)), phi(std::move(phi_)), xi(std::move(xi_)), eta(std::move(eta_)) {
  const std::size_t d = chart.dim();
  if (d % 2 == 0) throw std::invalid_argument("an almost contact structure needs odd dimension, got " + std::to_string(d));
  if (g.dim() != d || phi.dim() != d || xi.dim() != d || eta.dim() != d) {
    throw std::invalid_argument("structure components do not match the chart dimension");
  }
  for (const auto& row : phi.m) {
    if (row.size() != d) throw std::invalid_argument("phi must be square");
  }
}

SampledStructure sample_structure(const AlmostContactStructure& s, const SampleConfig& config,
                                  const std::function<void(const Point&)>& extra) {
  SampledStructure ss{s, {}, {}, {}, config.tolerance};
  const MetricJets jets(s.g);
  const VectorFieldJets xi(s.xi);
  const VectorFieldJets eta(VectorField{s.eta.c});
  std::vector<VectorFieldJets> phi_columns;
  for (std::size_t j = 0; j < s.dim(); ++j) phi_columns.emplace_back(column(s.phi, j));
  ss.samples = draw_samples(config, s.dim(), [&](const Point& p) {
    LocalGeometry L = jets.at(p);
    VectorJet x = xi.at(p);
    eta.at(p);
    for (const auto& c : phi_columns) c.at(p);
    if (extra) extra(p);
    ss.local.push_back(std::move(L));
    ss.xi.push_back(std::move(x));
    return true;
  });
  return ss;
}

ResidualReport validate_algebraic(const SampledStructure& ss) {
  const auto& s = ss.s;
  const std::size_t n = s.dim();
  MaxAbs phi_sq, eta_phi, phi_xi, eta_xi, compat, skew, dual;
  const Mat I = Mat::Identity(n, n);
  for (const Point& p : ss.samples.points) {
    const Mat P = eval_matrix(s.phi.m, p);
    const Mat G = eval_matrix(s.g.components(), p);
    const Col xi = eval_vector(s.xi.c, p);
    const Col eta = eval_vector(s.eta.c, p);
    phi_sq.add(max_abs(P * P + I - xi * eta.transpose()));
    eta_phi.add(max_abs(eta.transpose() * P));
    phi_xi.add(max_abs(P * xi));
    eta_xi.add(eta.dot(xi) - 1.0);
    compat.add(max_abs(P.transpose() * G * P - G + eta * eta.transpose()));
    const Mat A = P.transpose() * G;  // A_ij = g(φ∂_i, ∂_j)
    skew.add(max_abs(A + A.transpose()));
    dual.add(max_abs(G * xi - eta));
  }
  ResidualReport r;
  r.seed = ss.samples.seed;
  r.samples = ss.samples.points.size();
  r.rejected = ss.samples.rejected;
  const double tol = ss.tolerance;
  r.add("phi_squared", phi_sq.value(), tol);
  r.add("eta_phi", eta_phi.value(), tol);
  r.add("phi_xi", phi_xi.value(), tol);
  r.add("eta_xi", eta_xi.value(), tol);
  r.add("metric_compat", compat.value(), tol);
  r.add("phi_skew", skew.value(), tol);
  r.add("xi_dual", dual.value(), tol);
  return r;
}

KForm fundamental_form(const AlmostContactStructure& s) {
  const std::size_t n = s.dim();
  KForm omega(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Expr sum;
      for (std::size_t k = 0; k < n; ++k) sum = sum + s.phi(k, i) * s.g(k, j);
      omega.set({i, j}, sym::simplify(sum));
    }
  }
  return omega;
}

std::vector<VectorField> nijenhuis(const AlmostContactStructure& s) {
  const std::size_t n = s.dim();
  std::vector<VectorField> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const VectorField x = VectorField::coordinate(n, i);
      const VectorField y = VectorField::coordinate(n, j);
      const VectorField px = column(s.phi, i);
      const VectorField py = column(s.phi, j);
      const VectorField a = lie_bracket(px, py);
      const VectorField b = apply(s.phi, lie_bracket(px, y));
      const VectorField c = apply(s.phi, lie_bracket(x, py));
      const Expr d_eta = sym::differentiate(s.eta[j], i) - sym::differentiate(s.eta[i], j);
      VectorField v = VectorField::zero(n);
      for (std::size_t k = 0; k < n; ++k) v.c[k] = sym::simplify(a[k] - b[k] - c[k] + d_eta * s.xi[k]);
      out.push_back(std::move(v));
    }
  }
  return out;
}

double nijenhuis_residual(const SampledStructure& ss) {
  MaxAbs worst;
  for (const VectorField& v : nijenhuis(ss.s)) {
    for (const Expr& e : v.c) {
      if (e.is_constant(0.0)) continue;
      for (const Point& p : ss.samples.points) worst.add(sym::evaluate(e, p));
    }
  }
  return worst.value();
}

bool is_normal(const SampledStructure& ss) { return nijenhuis_residual(ss) <= ss.tolerance; }

Extraction extract_f(const SampledStructure& ss) {
  const auto& s = ss.s;
  const std::size_t n = s.dim();
  const double tol = ss.tolerance;
  Extraction out;
  out.report.seed = ss.samples.seed;
  out.report.samples = ss.samples.points.size();
  out.report.rejected = ss.samples.rejected;

  const KForm eta = KForm::from_one_form(s.eta);
  const double d_eta = sampled_form_max(exterior_derivative(eta), ss);
  out.report.add("d_eta", d_eta, tol);
  if (!(d_eta <= tol)) {
    out.error = "d(eta) does not vanish: not almost f-cosymplectic";
    return out;
  }

  const KForm omega = fundamental_form(s);
  const KForm d_omega = exterior_derivative(omega);
  const KForm eta_omega = wedge(eta, omega);
  if (eta_omega.components().empty()) {
    out.error = "eta^omega vanishes identically";
    return out;
  }

  // quotient index: the component of η∧ω farthest from zero over all samples
  const KForm::Index* best = nullptr;
  double best_min = -1.0;
  for (const auto& [idx, value] : eta_omega.components()) {
    double lo = INFINITY;
    for (const Point& p : ss.samples.points) lo = std::min(lo, std::fabs(sym::evaluate(value, p)));
    if (lo > best_min) {
      best_min = lo;
      best = &idx;
    }
  }
  for (const Point& p : ss.samples.points) {
    double largest = 0.0;
    for (const auto& [idx, value] : eta_omega.components()) largest = std::max(largest, std::fabs(sym::evaluate(value, p)));
    if (largest < 1e-10) {
      out.error = "eta^omega vanishes at a sample point";
      return out;
    }
  }

  const Expr f = sym::simplify(d_omega.at(*best) / (2.0 * eta_omega.at(*best)));
  MaxAbs form_eq, spread;
  for (const auto& idx : increasing_tuples(n, 3)) {
    const Expr lhs = d_omega.at(idx);
    const Expr rhs = eta_omega.at(idx);
    for (const Point& p : ss.samples.points) {
      const double fv = sym::evaluate(f, p);
      const double w = sym::evaluate(rhs, p);
      form_eq.add(sym::evaluate(lhs, p) - 2.0 * fv * w);
      if (std::fabs(w) > 1e-8) spread.add((sym::evaluate(lhs, p) / (2.0 * w) - fv) / std::max(1.0, std::fabs(fv)));
    }
  }
  out.report.add("form_equation", form_eq.value(), tol);
  out.report.add("f_consistency", spread.value(), tol);

  const KForm df = exterior_derivative(KForm::scalar(n, f));
  const double df_eta = sampled_form_max(wedge(df, eta), ss);
  out.report.add("df_wedge_eta", df_eta, tol);

  if (!(form_eq.value() <= tol) || !(spread.value() <= tol)) {
    out.error = "d(omega) is not proportional to eta^omega";
    return out;
  }
  if (!(df_eta <= tol)) {
    out.error = "f varies across the Reeb direction (df^eta != 0)";
    return out;
  }
  const Expr f_tilde = sym::simplify(directional(s.xi, f) + f * f);
  out.scalars = StructureScalars{f, f_tilde};
  return out;
}

ClassificationReport classify(const SampledStructure& ss) {
  ClassificationReport c;
  const double tol = ss.tolerance;
  c.report = validate_algebraic(ss);
  if (!c.report.passed()) {
    c.label = "not an almost contact metric structure";
    return c;
  }
  const double nij = nijenhuis_residual(ss);
  c.normal = nij <= tol;
  c.report.add("nijenhuis", nij, tol);

  Extraction ex = extract_f(ss);
  c.report.append(ex.report);
  if (!ex.scalars) {
    c.label = "not almost f-cosymplectic";
    c.report.notes.push_back(ex.error);
    return c;
  }
  c.scalars = ex.scalars;
  c.almost_f_cosymplectic = true;

  const Expr& f = ex.scalars->f;
  const double f0 = sym::evaluate(f, ss.samples.points.front());
  MaxAbs size, variation;
  for (const Point& p : ss.samples.points) {
    const double v = sym::evaluate(f, p);
    size.add(v);
    variation.add(v - f0);
  }
  const bool constant = f.is_constant() || variation.value() <= tol;
  const bool zero = size.value() <= tol;
  if (constant) c.alpha = f.is_constant() ? f.constant_value() : f0;
  if (zero) c.alpha = 0.0;

  c.almost_cosymplectic = zero;
  c.almost_alpha_cosymplectic = constant;
  c.f_cosymplectic = c.normal;
  c.alpha_cosymplectic = c.normal && constant;
  c.cosymplectic = c.normal && zero;
  c.kenmotsu_type = c.normal && constant && !zero;

  const std::string alpha = c.alpha ? format_constant(*c.alpha) : "";
  if (c.normal) {
    if (zero) {
      c.label = "cosymplectic";
    } else if (constant) {
      c.label = "α-cosymplectic (Kenmotsu-type), f = " + alpha;
    } else {
      c.label = "f-cosymplectic";
    }
  } else {
    if (zero) {
      c.label = "almost cosymplectic";
    } else if (constant) {
      c.label = "almost α-cosymplectic, f = " + alpha;
    } else {
      c.label = "almost f-cosymplectic";
    }
    c.report.notes.push_back("structure is not normal");
  }
  return c;
}

ResidualReport verify_structure_identities(const SampledStructure& ss, const StructureScalars& sc, bool normal) {
  const auto& s = ss.s;
  const std::size_t n = s.dim();
  const double two_n = 2.0 * static_cast<double>(s.n());
  MaxAbs nabla_xi, q_xi, r_xi;
  for (std::size_t k = 0; k < ss.samples.points.size(); ++k) {
    const Point& p = ss.samples.points[k];
    const LocalGeometry& L = ss.local[k];
    const double f = sym::evaluate(sc.f, p);
    const double ft = sym::evaluate(sc.f_tilde, p);
    const Mat P = eval_matrix(s.phi.m, p);
    const Mat P2 = P * P;
    const Col eta = eval_vector(s.eta.c, p);
    const VectorJet& xi = ss.xi[k];

    const Array<2> nx = L.nabla(xi);  // (a, i) = ∇_a ξ^i
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t i = 0; i < n; ++i) nabla_xi.add(nx(a, i) + f * P2(i, a));
    }
    const Vec qx = L.apply_ricci_operator(xi.v);
    for (std::size_t i = 0; i < n; ++i) q_xi.add(qx[i] + two_n * ft * xi.v[i]);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
          double r = 0.0;
          for (std::size_t m = 0; m < n; ++m) r += L.riemann(l, i, j, m) * xi.v[m];
          const double rhs = ft * (eta(i) * (l == j ? 1.0 : 0.0) - eta(j) * (l == i ? 1.0 : 0.0));
          r_xi.add(r - rhs);
        }
      }
    }
  }
  ResidualReport r;
  r.seed = ss.samples.seed;
  r.samples = ss.samples.points.size();
  r.rejected = ss.samples.rejected;
  const std::string note = normal ? "" : "structure not normal; identity not guaranteed";
  r.add("reeb_covariant_derivative", nabla_xi.value(), ss.tolerance, !normal, note);
  r.add("ricci_on_reeb", q_xi.value(), ss.tolerance, !normal, note);
  r.add("curvature_on_reeb", r_xi.value(), ss.tolerance, !normal, note);
  return r;
}

ResidualReport verify_3d_ricci(const SampledStructure& ss, const StructureScalars& sc) {
  if (ss.s.dim() != 3) throw std::invalid_argument("the three-dimensional Ricci formula needs dim 3");
  MaxAbs formula, decomposition;
  for (std::size_t k = 0; k < ss.samples.points.size(); ++k) {
    const Point& p = ss.samples.points[k];
    const LocalGeometry& L = ss.local[k];
    const double ft = sym::evaluate(sc.f_tilde, p);
    const Col eta = eval_vector(ss.s.eta.c, p);
    const Col xi = eval_vector(ss.s.xi.c, p);
    const Mat Q = to_mat(L.ricci_operator());
    const Mat rhs = (-3.0 * ft - 0.5 * L.scalar) * xi * eta.transpose() + (ft + 0.5 * L.scalar) * Mat::Identity(3, 3);
    formula.add(max_abs(Q - rhs));
    decomposition.add(curvature_3d_decomposition_residual(L));
  }
  ResidualReport r;
  r.seed = ss.samples.seed;
  r.samples = ss.samples.points.size();
  r.rejected = ss.samples.rejected;
  r.add("ricci_3d_formula", formula.value(), ss.tolerance);
  r.add("curvature_3d_decomposition", decomposition.value(), ss.tolerance);
  return r;
}

double h_tensor_residual(const SampledStructure& ss) {
  const Tensor11 l = lie_derivative_tensor11(ss.s.phi, ss.s.xi);
  MaxAbs worst;
  for (const auto& row : l.m) {
    for (const Expr& e : row) {
      if (e.is_constant(0.0)) continue;
      for (const Point& p : ss.samples.points) worst.add(0.5 * sym::evaluate(e, p));
    }
  }
  return worst.value();
}

double f_cross_determination_residual(const SampledStructure& ss, const StructureScalars& sc) {
  const std::size_t n = ss.s.dim();
  MaxAbs worst;
  for (std::size_t k = 0; k < ss.samples.points.size(); ++k) {
    const Point& p = ss.samples.points[k];
    const LocalGeometry& L = ss.local[k];
    const Mat P = eval_matrix(ss.s.phi.m, p);
    const Mat P2 = P * P;
    const Array<2> nx = L.nabla(ss.xi[k]);
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t a = 0; a < n; ++a) {
      const Vec v(P2.col(static_cast<Eigen::Index>(a)).data(), P2.col(static_cast<Eigen::Index>(a)).data() + n);
      const double norm = L.inner(v, v);
      if (norm > best_norm) {
        best_norm = norm;
        best = a;
      }
    }
    Vec v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = P2(i, best);
      w[i] = nx(best, i);
    }
    const double f_nabla = -L.inner(w, v) / L.inner(v, v);
    worst.add(f_nabla - sym::evaluate(sc.f, p));
  }
  return worst.value();
}

FTildeConstancyVerdict check_ftilde_constancy(const SampledStructure& ss, const StructureScalars& sc) {
  FTildeConstancyVerdict v;
  const ScalarField ft(sc.f_tilde, ss.s.dim());
  MaxAbs xi_ft, grad;
  v.f_tilde_min = INFINITY;
  v.f_tilde_max = -INFINITY;
  for (std::size_t k = 0; k < ss.samples.points.size(); ++k) {
    const ScalarJet j = ft.at(ss.samples.points[k]);
    const LocalGeometry& L = ss.local[k];
    double d = 0.0;
    for (std::size_t a = 0; a < L.n; ++a) d += ss.xi[k].v[a] * j.d[a];
    xi_ft.add(d);
    grad.add(std::sqrt(std::max(0.0, L.inner(L.raise(j.d), L.raise(j.d)))));
    v.f_tilde_min = std::min(v.f_tilde_min, j.v);
    v.f_tilde_max = std::max(v.f_tilde_max, j.v);
  }
  v.xi_f_tilde = xi_ft.value();
  v.grad_f_tilde = grad.value();
  v.hypothesis = v.xi_f_tilde <= ss.tolerance;
  v.asserted = v.hypothesis;
  v.passed = !v.hypothesis || v.grad_f_tilde <= ss.tolerance;
  return v;
}

LaplacianPair laplacian_two_ways(const AlmostContactStructure& s, const StructureScalars& sc, const Expr& F,
                                 const Point& p) {
  const std::size_t n = s.dim();
  const LocalGeometry L = MetricJets(s.g).at(p);
  const ScalarJet fj = ScalarField(F, n).at(p);
  const VectorJet xi = VectorFieldJets(s.xi).at(p);
  const VectorJet grad = L.gradient(fj);
  const Array<2> ngrad = L.nabla(grad);

  LaplacianPair out;
  for (const Vec& e : orthonormal_frame(L.g, xi.v)) {
    Vec d(n, 0.0);  // ∇_e DF
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t i = 0; i < n; ++i) d[i] += e[a] * ngrad(a, i);
    }
    out.frame_sum += L.inner(d, e);
  }

  for (std::size_t i = 0; i < n; ++i) {
    double trace = 0.0;  // tr(g^{-1} ∂_i g) = 2 ∂_i ln √det g
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) trace += L.ginv(a, b) * L.dg(i, b, a);
    }
    for (std::size_t j = 0; j < n; ++j) {
      out.coordinate += 0.5 * trace * L.ginv(i, j) * fj.d[j] + L.dginv(i, i, j) * fj.d[j] + L.ginv(i, j) * fj.dd(i, j);
    }
  }

  double xi_f = 0.0;
  for (std::size_t a = 0; a < n; ++a) xi_f += xi.v[a] * fj.d[a];
  Vec perp = grad.v;
  for (std::size_t i = 0; i < n; ++i) perp[i] -= xi_f * xi.v[i];
  const double scale = 1.0 + std::sqrt(L.inner(grad.v, grad.v));
  if (std::sqrt(std::max(0.0, L.inner(perp, perp))) <= 1e-10 * scale) {
    double xi_xi_f = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) xi_xi_f += xi.v[a] * xi.d(a, b) * fj.d[b] + xi.v[a] * xi.v[b] * fj.dd(a, b);
    }
    out.reeb_formula = xi_xi_f + 2.0 * static_cast<double>(s.n()) * sym::evaluate(sc.f, p) * xi_f;
  }
  return out;
}

}  // namespace acm
