#pragma once

// The verification driver behind the command line: classify and verify runs
// over a manifold document, their reports and the two report formats.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acm/document.hpp"
#include "acm/report.hpp"

namespace acm {

struct SolitonSummary {
  std::string kind;
  std::optional<double> lambda;  // given, or solved for the contact kind
  bool solved = false;           // λ came from solve_contact_lambda
  std::string lambda_type;       // empty when λ is unknown
  std::string branch;            // theorem branch, when the hypotheses hold
};

struct Report {
  std::string command;  // classify | verify
  std::string label;
  std::vector<std::pair<std::string, bool>> flags;
  std::string f;        // pretty-printed; empty when not extracted
  std::string f_tilde;
  std::optional<SolitonSummary> soliton;
  ResidualReport residuals;

  bool passed() const { return residuals.passed(); }
};

/// Sampling could not produce the requested points (budget exhausted).
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Algebraic validation, normality, extraction of f and classification.
Report cmd_classify(const ManifoldDocument& doc, const RunOverrides& overrides = {});
/// The full suite: classification, structure identities, the 3D checks,
/// universal laws and, with a soliton block, the soliton checks.
Report cmd_verify(const ManifoldDocument& doc, const RunOverrides& overrides = {});

std::string render_text(const Report& report);
/// Deterministic for a fixed document and seed.
std::string render_json(const Report& report);

/// The number as it appears in both report formats; lossless for finite
/// values, "nan" or "inf" otherwise in text and null in JSON.
std::string report_number(double v);

/// Runs the command line with `args` (without the program name). Returns the
/// exit code: 0 pass, 1 check failure, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acm
