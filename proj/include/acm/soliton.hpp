#pragma once

// Ricci solitons ½L_V g + Ric = λg, sampled residuals, and the checks that
// follow from a soliton on an f-cosymplectic manifold.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acm/contact.hpp"
#include "acm/local.hpp"
#include "acm/report.hpp"
#include "acm/sampling.hpp"
#include "acm/tensor.hpp"

namespace acm {

enum class SolitonKind { Contact, Gradient, Vector };

struct SolitonSpec {
  SolitonKind kind = SolitonKind::Contact;
  Expr potential;              // gradient kind
  VectorField field;           // vector kind
  std::optional<double> lambda;  // may be left open for the contact kind

  static SolitonSpec contact(std::optional<double> lambda = std::nullopt);
  static SolitonSpec gradient(Expr potential, double lambda);
  static SolitonSpec vector(VectorField field, double lambda);
};

const char* to_string(SolitonKind kind);

/// A metric with its local geometry at seeded sample points.
struct SampledMetric {
  MetricField g;
  SampleSet samples;
  std::vector<LocalGeometry> local;
  double tolerance = kDefaultTolerance;
};

SampledMetric sample_metric(const MetricField& g, const SampleConfig& config,
                            const std::function<void(const Point&)>& extra = {});
SampledMetric as_sampled_metric(const SampledStructure& ss);

/// V (and F, for the gradient kind) at each sample.
struct SolitonField {
  SolitonKind kind = SolitonKind::Contact;
  std::vector<VectorJet> v;
  std::vector<ScalarJet> potential;
};

/// Throws std::invalid_argument for the contact kind without a structure, and
/// sym::DomainError when V cannot be evaluated at a sample.
SolitonField soliton_field(const SampledMetric& sm, const SolitonSpec& spec,
                           const AlmostContactStructure* structure = nullptr);

/// Evaluates everything soliton_field needs at p; throws where it cannot.
/// Passed as `extra` to the samplers so that such points are redrawn.
std::function<void(const Point&)> soliton_domain_probe(const SolitonSpec& spec, std::size_t dim);

/// ½L_V g + Ric − λg in closed form.
SymTensor2 soliton_tensor(const MetricField& g, const VectorField& v, double lambda);

/// "soliton": max |½L_V g + Ric − λg|.
ResidualReport soliton_residual(const SampledMetric& sm, const SolitonField& v, double lambda);

/// "gradient_soliton": max |Hess F + Ric − λg|. Needs the gradient kind.
ResidualReport gradient_residual(const SampledMetric& sm, const SolitonField& v, double lambda);

/// [Ric + ½L_ξ g](ξ,ξ) / g(ξ,ξ) at each sample.
std::vector<double> contact_lambda_candidates(const SampledStructure& ss);

/// λ from Ric(ξ,ξ) + ½(L_ξ g)(ξ,ξ) = λ g(ξ,ξ), kept only when it is the
/// same at every sample and the full residual with V = ξ passes.
std::optional<double> solve_contact_lambda(const SampledStructure& ss);

enum class LambdaType { Shrinking, Steady, Expanding };

LambdaType classify_lambda(double lambda, double band = 1e-12);
const char* to_string(LambdaType type);

/// max |½‖L_V g‖² − V(R) − 2 div(λV − QV)|.
double cho_residual(const SampledMetric& sm, const SolitonField& v, double lambda);

/// max over coordinate X of |g(DR, X) − 2 Ric(DF, X)|. Needs the gradient kind.
double hamilton_residual(const SampledMetric& sm, const SolitonField& v);

/// max |2ξ(f̃) + ξ(R)/2 + 2(3f̃ + R/2) f|. Throws unless dim = 3.
double reeb_scalar_relation_residual(const SampledStructure& ss, const StructureScalars& sc);

struct EinsteinVerdict {
  double residual = 0.0;  // max |Ric − (R/dim) g|
  double spread = 0.0;    // max − min of R/dim over the samples
  bool passed = false;
  std::optional<double> constant;
};

EinsteinVerdict einstein_check(const SampledMetric& sm);

struct TheoremVerdict {
  bool hypotheses = false;  // soliton verified (and ξ(f̃) = 0 for the gradient kind)
  std::string branch;       // "ricci_flat", "cosymplectic", "einstein" or empty
  ResidualReport report;
};

/// Conclusions for a verified soliton on an f-cosymplectic manifold.
/// Contact kind: f ≡ 0, λ = 0, Ric ≡ 0. Gradient kind with ξ(f̃) = 0: either
/// f ≡ 0, or Einstein with R = 2n(λ − f̃) (and Q = −2f̃ I when n = 1).
/// Checks are advisory while the hypotheses are unverified.
TheoremVerdict theorem_report(const SampledStructure& ss, const StructureScalars& sc, const SolitonSpec& spec,
                              double lambda);

}  // namespace acm
