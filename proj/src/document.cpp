#include "acm/document.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "acm/parse.hpp"

namespace acm {

namespace {

using Json = nlohmann::ordered_json;

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

void reject_unknown(const Json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw DocumentError(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw DocumentError(path, "missing field '" + key + "'");
  return *it;
}

std::size_t read_count(const Json& v, const std::string& path, std::size_t min) {
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < static_cast<std::int64_t>(min))) {
    throw DocumentError(path, "expected an integer >= " + std::to_string(min));
  }
  return v.get<std::size_t>();
}

double read_number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw DocumentError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw DocumentError(path, "expected a finite number");
  return x;
}

std::string read_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw DocumentError(path, "expected an expression string");
  return v.get<std::string>();
}

std::vector<std::string> read_strings(const Json& v, const std::string& path, std::size_t n) {
  if (!v.is_array()) throw DocumentError(path, "expected an array");
  if (v.size() != n) {
    throw DocumentError(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(read_string(v[i], index_path(path, i)));
  return out;
}

std::vector<std::vector<std::string>> read_matrix(const Json& v, const std::string& path, std::size_t n) {
  if (!v.is_array()) throw DocumentError(path, "expected an array of rows");
  if (v.size() != n) {
    throw DocumentError(path, "expected " + std::to_string(n) + " rows, got " + std::to_string(v.size()));
  }
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(read_strings(v[i], index_path(path, i), n));
  return out;
}

DocumentSoliton read_soliton(const Json& v, std::size_t n) {
  if (!v.is_object()) throw DocumentError("soliton", "expected an object");
  reject_unknown(v, "soliton", {"kind", "potential", "components", "lambda"});
  DocumentSoliton s;
  const Json& kind = require(v, "kind", "soliton");
  if (!kind.is_string()) throw DocumentError("soliton.kind", "expected a string");
  s.kind = kind.get<std::string>();
  if (s.kind != "contact" && s.kind != "gradient" && s.kind != "vector") {
    throw DocumentError("soliton.kind", "expected contact, gradient or vector, got '" + s.kind + "'");
  }
  if (v.contains("potential")) s.potential = read_string(v["potential"], "soliton.potential");
  if (v.contains("components")) s.components = read_strings(v["components"], "soliton.components", n);
  if (v.contains("lambda")) s.lambda = read_number(v["lambda"], "soliton.lambda");
  if (s.kind == "gradient" && !s.potential) throw DocumentError("soliton", "a gradient soliton needs 'potential'");
  if (s.kind == "vector" && !s.components) throw DocumentError("soliton", "a vector soliton needs 'components'");
  if (s.kind != "gradient" && s.potential) throw DocumentError("soliton.potential", "only a gradient soliton has one");
  if (s.kind != "vector" && s.components) throw DocumentError("soliton.components", "only a vector soliton has them");
  if (s.kind != "contact" && !s.lambda) throw DocumentError("soliton", "missing field 'lambda'");
  return s;
}

DocumentSamples read_samples(const Json& v, std::size_t n) {
  if (!v.is_object()) throw DocumentError("samples", "expected an object");
  reject_unknown(v, "samples", {"count", "seed", "ranges"});
  DocumentSamples s;
  if (v.contains("count")) s.count = read_count(v["count"], "samples.count", 1);
  if (v.contains("seed")) {
    const Json& seed = v["seed"];
    if (!seed.is_number_unsigned()) throw DocumentError("samples.seed", "expected a non-negative integer");
    s.seed = seed.get<std::uint64_t>();
  }
  if (v.contains("ranges")) {
    const Json& r = v["ranges"];
    if (!r.is_array() || r.size() != n) {
      throw DocumentError("samples.ranges", "expected " + std::to_string(n) + " [min, max] pairs");
    }
    std::vector<std::pair<double, double>> ranges;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string path = index_path("samples.ranges", i);
      if (!r[i].is_array() || r[i].size() != 2) throw DocumentError(path, "expected [min, max]");
      const double lo = read_number(r[i][0], path + "[0]");
      const double hi = read_number(r[i][1], path + "[1]");
      if (!(lo < hi)) throw DocumentError(path, "min must be below max");
      ranges.emplace_back(lo, hi);
    }
    s.ranges = std::move(ranges);
  }
  return s;
}

Expr parse_field(const Chart& chart, const std::string& source, const std::string& path) {
  try {
    return chart.parse(source);
  } catch (const sym::ParseError& e) {
    throw DocumentError(path, std::string(e.what()) + " in \"" + source + "\"");
  }
}

Json strings_json(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

std::vector<std::string> expr_strings(const std::vector<Expr>& v) {
  std::vector<std::string> out;
  for (const Expr& e : v) out.push_back(sym::to_string(e));
  return out;
}

}  // namespace

ManifoldDocument parse_document(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::exception& e) {
    throw DocumentError("", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw DocumentError("", "the document must be a JSON object");
  reject_unknown(root, "", {"dimension", "coordinates", "metric", "phi", "xi", "eta", "soliton", "samples", "tolerance"});

  ManifoldDocument doc;
  doc.dimension = read_count(require(root, "dimension", ""), "dimension", 1);
  const std::size_t n = doc.dimension;
  doc.coordinates = read_strings(require(root, "coordinates", ""), "coordinates", n);
  doc.metric = read_matrix(require(root, "metric", ""), "metric", n);
  doc.phi = read_matrix(require(root, "phi", ""), "phi", n);
  doc.xi = read_strings(require(root, "xi", ""), "xi", n);
  doc.eta = read_strings(require(root, "eta", ""), "eta", n);
  if (root.contains("soliton")) doc.soliton = read_soliton(root["soliton"], n);
  if (root.contains("samples")) doc.samples = read_samples(root["samples"], n);
  if (root.contains("tolerance")) {
    const double tol = read_number(root["tolerance"], "tolerance");
    if (!(tol > 0)) throw DocumentError("tolerance", "must be positive");
    doc.tolerance = tol;
  }
  document_structure(doc);
  document_soliton(doc);
  return doc;
}

ManifoldDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("", "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_document(text.str());
}

std::string document_to_json(const ManifoldDocument& doc) {
  Json root;
  root["dimension"] = doc.dimension;
  root["coordinates"] = strings_json(doc.coordinates);
  for (const char* key : {"metric", "phi"}) {
    const auto& m = std::string(key) == "metric" ? doc.metric : doc.phi;
    Json rows = Json::array();
    for (const auto& row : m) rows.push_back(strings_json(row));
    root[key] = rows;
  }
  root["xi"] = strings_json(doc.xi);
  root["eta"] = strings_json(doc.eta);
  if (doc.soliton) {
    Json s;
    s["kind"] = doc.soliton->kind;
    if (doc.soliton->potential) s["potential"] = *doc.soliton->potential;
    if (doc.soliton->components) s["components"] = strings_json(*doc.soliton->components);
    if (doc.soliton->lambda) s["lambda"] = *doc.soliton->lambda;
    root["soliton"] = s;
  }
  if (doc.samples.count || doc.samples.seed || doc.samples.ranges) {
    Json s = Json::object();
    if (doc.samples.count) s["count"] = *doc.samples.count;
    if (doc.samples.seed) s["seed"] = *doc.samples.seed;
    if (doc.samples.ranges) {
      Json r = Json::array();
      for (const auto& [lo, hi] : *doc.samples.ranges) r.push_back(Json::array({lo, hi}));
      s["ranges"] = r;
    }
    root["samples"] = s;
  }
  if (doc.tolerance) root["tolerance"] = *doc.tolerance;
  return root.dump(2) + "\n";
}

void save_document(const ManifoldDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DocumentError("", "cannot write " + path.string());
  out << document_to_json(doc);
}

AlmostContactStructure document_structure(const ManifoldDocument& doc) {
  std::optional<Chart> chart;
  try {
    chart.emplace(doc.coordinates);
  } catch (const std::invalid_argument& e) {
    throw DocumentError("coordinates", e.what());
  }
  const std::size_t n = doc.dimension;
  ExprMatrix g(n, std::vector<Expr>(n));
  Tensor11 phi = Tensor11::zero(n);
  VectorField xi = VectorField::zero(n);
  OneForm eta{std::vector<Expr>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g[i][j] = parse_field(*chart, doc.metric[i][j], index_path(index_path("metric", i), j));
      phi.m[i][j] = parse_field(*chart, doc.phi[i][j], index_path(index_path("phi", i), j));
    }
    xi.c[i] = parse_field(*chart, doc.xi[i], index_path("xi", i));
    eta.c[i] = parse_field(*chart, doc.eta[i], index_path("eta", i));
  }
  std::optional<MetricField> metric;
  try {
    metric.emplace(g);
  } catch (const std::invalid_argument& e) {
    throw DocumentError("metric", e.what());
  }
  try {
    return AlmostContactStructure(*chart, *metric, phi, xi, eta);
  } catch (const std::invalid_argument& e) {
    throw DocumentError("dimension", e.what());
  }
}

std::optional<SolitonSpec> document_soliton(const ManifoldDocument& doc) {
  if (!doc.soliton) return std::nullopt;
  const DocumentSoliton& s = *doc.soliton;
  const Chart chart(doc.coordinates);
  if (s.kind == "contact") return SolitonSpec::contact(s.lambda);
  if (s.kind == "gradient") return SolitonSpec::gradient(parse_field(chart, *s.potential, "soliton.potential"), *s.lambda);
  VectorField v = VectorField::zero(doc.dimension);
  for (std::size_t i = 0; i < doc.dimension; ++i) {
    v.c[i] = parse_field(chart, (*s.components)[i], index_path("soliton.components", i));
  }
  return SolitonSpec::vector(std::move(v), *s.lambda);
}

SampleConfig document_sample_config(const ManifoldDocument& doc, const RunOverrides& overrides) {
  SampleConfig c;
  c.count = overrides.samples.value_or(doc.samples.count.value_or(kDefaultSamples));
  c.seed = overrides.seed.value_or(doc.samples.seed.value_or(kDefaultSeed));
  c.tolerance = overrides.tolerance.value_or(doc.tolerance.value_or(kDefaultTolerance));
  if (doc.samples.ranges) c.ranges = *doc.samples.ranges;
  return c;
}

ManifoldDocument scenario_document(const Scenario& scenario) {
  const AlmostContactStructure& s = scenario.structure;
  ManifoldDocument doc;
  doc.dimension = s.dim();
  doc.coordinates = s.chart.names();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    doc.metric.push_back(expr_strings(s.g.components()[i]));
    doc.phi.push_back(expr_strings(s.phi.m[i]));
  }
  doc.xi = expr_strings(s.xi.c);
  doc.eta = expr_strings(s.eta.c);
  if (scenario.soliton) {
    const SolitonSpec& spec = *scenario.soliton;
    DocumentSoliton ds;
    ds.kind = to_string(spec.kind);
    ds.lambda = spec.lambda;
    if (spec.kind == SolitonKind::Gradient) ds.potential = sym::to_string(spec.potential);
    if (spec.kind == SolitonKind::Vector) ds.components = expr_strings(spec.field.c);
    doc.soliton = ds;
  }
  if (!scenario.ranges.empty()) doc.samples.ranges = scenario.ranges;
  return doc;
}

}  // namespace acm
