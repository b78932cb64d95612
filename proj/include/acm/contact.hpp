#pragma once

// Almost contact metric structures (φ, ξ, η, g): algebraic validation,
// normality, extraction of f from dω = 2f η∧ω, classification, and the
// sampled structure identities.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acm/local.hpp"
#include "acm/report.hpp"
#include "acm/sampling.hpp"
#include "acm/tensor.hpp"

namespace acm {

struct AlmostContactStructure {
  Chart chart;
  MetricField g;
  Tensor11 phi;
  VectorField xi;
  OneForm eta;

  /// Throws std::invalid_argument on an even dimension or mismatched arities.
  AlmostContactStructure(Chart chart, MetricField g, Tensor11 phi, VectorField xi, OneForm eta);

  std::size_t dim() const { return chart.dim(); }
  /// dim = 2n + 1.
  std::size_t n() const { return (dim() - 1) / 2; }
};

/// A structure together with its seeded sample points and the local geometry
/// at each of them. Points where the metric degenerates or any component of
/// g, φ, ξ, η (or their derivatives) leaves its domain are redrawn, as are
/// points where `extra` throws.
struct SampledStructure {
  AlmostContactStructure s;
  SampleSet samples;
  std::vector<LocalGeometry> local;
  std::vector<VectorJet> xi;
  double tolerance = kDefaultTolerance;
};

SampledStructure sample_structure(const AlmostContactStructure& s, const SampleConfig& config,
                                  const std::function<void(const Point&)>& extra = {});

struct StructureScalars {
  Expr f;
  Expr f_tilde;  // ξ(f) + f²
};

/// phi_squared, eta_phi, phi_xi, eta_xi, metric_compat, phi_skew, xi_dual.
ResidualReport validate_algebraic(const SampledStructure& ss);

/// ω(X,Y) = g(φX, Y).
KForm fundamental_form(const AlmostContactStructure& s);

/// N(∂_i, ∂_j) for i < j, in increasing pair order:
/// φ²[X,Y] + [φX,φY] − φ[φX,Y] − φ[X,φY] + dη(X,Y) ξ, where dη is the
/// alternating-sum derivative (dη(X,Y) = Xη(Y) − Yη(X) − η([X,Y])).
std::vector<VectorField> nijenhuis(const AlmostContactStructure& s);
double nijenhuis_residual(const SampledStructure& ss);
bool is_normal(const SampledStructure& ss);

struct Extraction {
  std::optional<StructureScalars> scalars;
  ResidualReport report;  // d_eta, form_equation, f_consistency, df_wedge_eta
  std::string error;      // set when scalars is empty
};

/// Solves dω = 2f η∧ω for f and checks it.
Extraction extract_f(const SampledStructure& ss);

struct ClassificationReport {
  bool almost_f_cosymplectic = false;
  bool almost_cosymplectic = false;
  bool almost_alpha_cosymplectic = false;
  bool f_cosymplectic = false;
  bool alpha_cosymplectic = false;
  bool cosymplectic = false;
  bool kenmotsu_type = false;
  bool normal = false;
  std::optional<double> alpha;  // the constant value of f, when constant
  std::optional<StructureScalars> scalars;
  std::string label;
  ResidualReport report;
};

ClassificationReport classify(const SampledStructure& ss);

/// reeb_covariant_derivative (∇_X ξ = −f φ²X), ricci_on_reeb (Qξ = −2n f̃ ξ),
/// curvature_on_reeb (R(X,Y)ξ = f̃[η(X)Y − η(Y)X]); advisory unless normal.
ResidualReport verify_structure_identities(const SampledStructure& ss, const StructureScalars& sc, bool normal = true);

/// ricci_3d_formula: Q = (−3f̃ − R/2) η⊗ξ + (f̃ + R/2) I. Throws unless dim = 3.
ResidualReport verify_3d_ricci(const SampledStructure& ss, const StructureScalars& sc);

/// h_tensor: max |½ L_ξ φ|.
double h_tensor_residual(const SampledStructure& ss);

/// max |f_∇ − f| where f_∇ solves ∇_X ξ = −f φ²X on the coordinate direction
/// with the largest |φ²X|.
double f_cross_determination_residual(const SampledStructure& ss, const StructureScalars& sc);

struct FTildeConstancyVerdict {
  double xi_f_tilde = 0.0;    // max |ξ(f̃)|
  bool hypothesis = false;    // xi_f_tilde <= tol
  double grad_f_tilde = 0.0;  // max |Df̃|_g
  bool asserted = false;      // hypothesis and the conclusion was tested
  bool passed = false;        // hypothesis ⇒ grad_f_tilde <= tol
  double f_tilde_min = 0.0;
  double f_tilde_max = 0.0;
};

/// If ξ(f̃) vanishes on the samples, checks that Df̃ does as well.
FTildeConstancyVerdict check_ftilde_constancy(const SampledStructure& ss, const StructureScalars& sc);

struct LaplacianPair {
  double frame_sum = 0.0;   // Σ_i g(∇_{e_i} DF, e_i), frame with e_last = ξ
  double coordinate = 0.0;  // (1/√det g) ∂_i(√det g g^{ij} ∂_j F)
  std::optional<double> reeb_formula;  // ξ(ξ(F)) + 2n f ξ(F) when DF ∥ ξ
};

/// Throws DegenerateMetric at a degenerate point.
LaplacianPair laplacian_two_ways(const AlmostContactStructure& s, const StructureScalars& sc, const Expr& F,
                                 const Point& p);

}  // namespace acm
