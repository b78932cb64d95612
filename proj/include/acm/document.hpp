#pragma once

// Manifold documents: JSON text describing a chart, (g, φ, ξ, η), an optional
// soliton and the sampling setup. Expressions are strings in the symexpr
// grammar over the declared coordinates.
//
//   {
//     "dimension": 3,
//     "coordinates": ["x", "y", "z"],
//     "metric": [["exp(2*z)", "0", "0"], ...],
//     "phi": [["0", "-1", "0"], ...],            phi[i][j] = φ^i_j
//     "xi": ["0", "0", "1"],
//     "eta": ["0", "0", "1"],
//     "soliton": {"kind": "gradient", "potential": "0", "lambda": -2},
//     "samples": {"count": 50, "seed": 42, "ranges": [[-1, 1], ...]},
//     "tolerance": 1e-7
//   }
//
// "soliton", "samples", "tolerance" and every key of "samples" are optional.
// A contact soliton takes no potential or components and may omit "lambda"
// to have it solved for. Unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "acm/catalog.hpp"
#include "acm/contact.hpp"
#include "acm/sampling.hpp"
#include "acm/soliton.hpp"

namespace acm {

/// Malformed input; the message starts with the offending field path.
class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct DocumentSoliton {
  std::string kind;                                 // contact | gradient | vector
  std::optional<std::string> potential;             // gradient
  std::optional<std::vector<std::string>> components;  // vector
  std::optional<double> lambda;

  bool operator==(const DocumentSoliton&) const = default;
};

struct DocumentSamples {
  std::optional<std::size_t> count;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::pair<double, double>>> ranges;

  bool operator==(const DocumentSamples&) const = default;
};

struct ManifoldDocument {
  std::size_t dimension = 0;
  std::vector<std::string> coordinates;
  std::vector<std::vector<std::string>> metric;
  std::vector<std::vector<std::string>> phi;
  std::vector<std::string> xi;
  std::vector<std::string> eta;
  std::optional<DocumentSoliton> soliton;
  DocumentSamples samples;
  std::optional<double> tolerance;

  bool operator==(const ManifoldDocument&) const = default;
};

/// Parses and validates JSON text. Throws DocumentError.
ManifoldDocument parse_document(const std::string& text);
/// Throws DocumentError, including when the file cannot be read.
ManifoldDocument load_document(const std::filesystem::path& path);

/// Pretty-printed JSON with a trailing newline.
std::string document_to_json(const ManifoldDocument& doc);
void save_document(const ManifoldDocument& doc, const std::filesystem::path& path);

/// The structure described by a validated document. Throws DocumentError
/// naming the field of any expression that does not parse.
AlmostContactStructure document_structure(const ManifoldDocument& doc);
/// Throws DocumentError for a malformed soliton block.
std::optional<SolitonSpec> document_soliton(const ManifoldDocument& doc);

/// Sampling configuration: document values, then overrides, then defaults.
struct RunOverrides {
  std::optional<double> tolerance;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
};

SampleConfig document_sample_config(const ManifoldDocument& doc, const RunOverrides& overrides = {});

/// Document for a catalog scenario, expressions printed canonically.
ManifoldDocument scenario_document(const Scenario& scenario);

}  // namespace acm
