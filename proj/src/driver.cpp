#include "acm/driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "acm/catalog.hpp"
#include "acm/parse.hpp"
#include "acm/simplify.hpp"
#include "acm/soliton.hpp"

namespace acm {

namespace {

using Json = nlohmann::ordered_json;

Json json_number(double v) {
  if (v == 0.0) return 0.0;  // folds −0
  return v;
}

std::string pretty(const Expr& e) { return sym::to_string(sym::simplify(e)); }

SampledStructure sample(const AlmostContactStructure& s, const SampleConfig& config,
                        const std::function<void(const Point&)>& extra = {}) {
  try {
    return sample_structure(s, config, extra);
  } catch (const std::invalid_argument& e) {
    throw DocumentError("samples", e.what());
  } catch (const std::runtime_error& e) {
    throw SamplingError(e.what());
  }
}

void add_unique(ResidualReport& into, const ResidualReport& from) {
  for (const CheckResult& c : from.checks) {
    if (!into.find(c.name)) into.checks.push_back(c);
  }
  for (const std::string& n : from.notes) into.notes.push_back(n);
}

struct Classified {
  Report report;
  SampledStructure ss;
  ClassificationReport cr;
};

Classified classify_document(const ManifoldDocument& doc, const RunOverrides& overrides, const char* command) {
  const AlmostContactStructure s = document_structure(doc);
  const std::optional<SolitonSpec> spec = document_soliton(doc);
  std::function<void(const Point&)> probe;
  if (spec && spec->kind != SolitonKind::Contact && std::string(command) == "verify") {
    probe = soliton_domain_probe(*spec, s.dim());
  }
  SampledStructure ss = sample(s, document_sample_config(doc, overrides), probe);
  ClassificationReport cr = classify(ss);

  Report r;
  r.command = command;
  r.label = cr.label;
  r.flags = {{"almost_f_cosymplectic", cr.almost_f_cosymplectic},
             {"almost_cosymplectic", cr.almost_cosymplectic},
             {"almost_alpha_cosymplectic", cr.almost_alpha_cosymplectic},
             {"f_cosymplectic", cr.f_cosymplectic},
             {"alpha_cosymplectic", cr.alpha_cosymplectic},
             {"cosymplectic", cr.cosymplectic},
             {"kenmotsu_type", cr.kenmotsu_type},
             {"normal", cr.normal}};
  if (cr.scalars) {
    r.f = pretty(cr.scalars->f);
    r.f_tilde = pretty(cr.scalars->f_tilde);
  }
  r.residuals = cr.report;
  r.residuals.seed = ss.samples.seed;
  r.residuals.samples = ss.samples.points.size();
  r.residuals.rejected = ss.samples.rejected;
  return {std::move(r), std::move(ss), std::move(cr)};
}

void structure_checks(Report& r, const SampledStructure& ss, const ClassificationReport& cr) {
  const StructureScalars& sc = *cr.scalars;
  const double tol = ss.tolerance;
  const bool normal = cr.normal;
  const std::string not_normal = normal ? "" : "structure is not normal";
  add_unique(r.residuals, verify_structure_identities(ss, sc, normal));
  r.residuals.add("h_tensor", h_tensor_residual(ss), tol, !normal, not_normal);
  r.residuals.add("f_cross_determination", f_cross_determination_residual(ss, sc), tol, !normal, not_normal);

  const FTildeConstancyVerdict p = check_ftilde_constancy(ss, sc);
  if (p.hypothesis && normal) {
    r.residuals.add("ftilde_constancy", p.grad_f_tilde, tol);
  } else {
    std::string note = p.hypothesis ? not_normal
                                    : "xi(f~) does not vanish (max " + report_number(p.xi_f_tilde) + ")";
    r.residuals.add("ftilde_constancy", p.grad_f_tilde, tol, true, note);
  }

  if (ss.s.dim() == 3) add_unique(r.residuals, verify_3d_ricci(ss, sc));
}

void universal_checks(Report& r, const SampledStructure& ss) {
  const std::size_t n = ss.s.dim();
  MaxAbs bianchi;
  for (const LocalGeometry& L : ss.local) {
    for (std::size_t a = 0; a < n; ++a) {
      Vec z(n, 0.0);
      z[a] = 1.0;
      bianchi.add(contracted_bianchi_residual(L, z));
    }
  }
  r.residuals.add("contracted_bianchi", bianchi.value(), ss.tolerance);
}

void soliton_checks(Report& r, const SampledStructure& ss, const ClassificationReport& cr, SolitonSpec spec) {
  const double tol = ss.tolerance;
  SolitonSummary summary;
  summary.kind = to_string(spec.kind);
  const SampledMetric sm = as_sampled_metric(ss);

  std::string note;
  double lambda = 0.0;
  if (spec.lambda) {
    lambda = *spec.lambda;
    summary.lambda = lambda;
  } else if (const std::optional<double> solved = solve_contact_lambda(ss)) {
    lambda = *solved;
    summary.lambda = lambda;
    summary.solved = true;
  } else {
    const std::vector<double> c = contact_lambda_candidates(ss);
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    lambda = 0.5 * (*lo + *hi);
    note = "no constant lambda solves the contact soliton equation; residual shown at lambda = " +
           report_number(lambda);
    if (cr.scalars) {
      MaxAbs f;
      for (const Point& p : ss.samples.points) f.add(sym::evaluate(cr.scalars->f, p));
      if (f.value() > tol) note += "; f is nonzero (max |f| = " + report_number(f.value()) + ")";
    }
  }
  if (summary.lambda) summary.lambda_type = to_string(classify_lambda(*summary.lambda));

  const SolitonField field = soliton_field(sm, spec, &ss.s);
  const CheckResult& sol = r.residuals.add("soliton", soliton_residual(sm, field, lambda).checks.front().residual,
                                           tol, false, note);
  const bool soliton_ok = sol.passed();
  const std::string unverified = soliton_ok ? "" : "soliton equation fails";
  if (spec.kind == SolitonKind::Gradient) {
    r.residuals.add("gradient_soliton", gradient_residual(sm, field, lambda).checks.front().residual, tol);
  }
  r.residuals.add("cho", cho_residual(sm, field, lambda), tol, !soliton_ok, unverified);
  if (spec.kind == SolitonKind::Gradient) {
    r.residuals.add("hamilton", hamilton_residual(sm, field), tol, !soliton_ok, unverified);
  }
  if (cr.scalars && cr.f_cosymplectic && ss.s.dim() == 3) {
    r.residuals.add("reeb_scalar_relation", reeb_scalar_relation_residual(ss, *cr.scalars), tol, !soliton_ok,
                    unverified);
  }

  const EinsteinVerdict e = einstein_check(sm);
  r.residuals.add("einstein_metric", std::max(e.residual, e.spread), tol, true,
                  e.constant ? "Ric = " + report_number(*e.constant) + " g" : "not Einstein");

  if (cr.scalars && cr.f_cosymplectic) {
    spec.lambda = lambda;
    const TheoremVerdict t = theorem_report(ss, *cr.scalars, spec, lambda);
    if (t.hypotheses) summary.branch = t.branch;
    add_unique(r.residuals, t.report);
  }
  r.soliton = summary;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string report_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return json_number(v).dump();
}

Report cmd_classify(const ManifoldDocument& doc, const RunOverrides& overrides) {
  return classify_document(doc, overrides, "classify").report;
}

Report cmd_verify(const ManifoldDocument& doc, const RunOverrides& overrides) {
  Classified c = classify_document(doc, overrides, "verify");
  Report& r = c.report;
  if (c.cr.scalars && c.cr.almost_f_cosymplectic) {
    structure_checks(r, c.ss, c.cr);
  } else {
    r.residuals.notes.push_back("structure identities skipped: f could not be extracted");
  }
  universal_checks(r, c.ss);
  if (const std::optional<SolitonSpec> spec = document_soliton(doc)) soliton_checks(r, c.ss, c.cr, *spec);
  return std::move(r);
}

std::string render_json(const Report& report) {
  Json j;
  j["command"] = report.command;
  j["passed"] = report.passed();
  j["label"] = report.label;
  Json flags = Json::object();
  for (const auto& [name, value] : report.flags) flags[name] = value;
  j["flags"] = flags;
  j["f"] = report.f.empty() ? Json() : Json(report.f);
  j["f_tilde"] = report.f_tilde.empty() ? Json() : Json(report.f_tilde);
  if (report.soliton) {
    const SolitonSummary& s = *report.soliton;
    Json o;
    o["kind"] = s.kind;
    o["lambda"] = s.lambda ? json_number(*s.lambda) : Json();
    o["lambda_type"] = s.lambda_type.empty() ? Json() : Json(s.lambda_type);
    o["solved"] = s.solved;
    o["branch"] = s.branch.empty() ? Json() : Json(s.branch);
    j["soliton"] = o;
  }
  Json checks = Json::array();
  for (const CheckResult& c : report.residuals.checks) {
    Json o;
    o["name"] = c.name;
    o["residual"] = json_number(c.residual);
    o["tolerance"] = json_number(c.tolerance);
    o["passed"] = c.passed();
    o["advisory"] = c.advisory;
    if (!c.note.empty()) o["note"] = c.note;
    checks.push_back(o);
  }
  j["checks"] = checks;
  j["sampling"] = {{"seed", report.residuals.seed},
                   {"samples", report.residuals.samples},
                   {"rejected", report.residuals.rejected}};
  j["notes"] = report.residuals.notes;
  return j.dump(2) + "\n";
}

std::string render_text(const Report& report) {
  std::ostringstream o;
  o << report.command << ": " << report.label << "\n";
  o << "flags:";
  for (const auto& [name, value] : report.flags) o << " " << name << "=" << yes_no(value);
  o << "\n";
  if (!report.f.empty()) o << "f = " << report.f << "\nf~ = " << report.f_tilde << "\n";
  if (report.soliton) {
    const SolitonSummary& s = *report.soliton;
    o << "soliton: " << s.kind << ", lambda = " << (s.lambda ? report_number(*s.lambda) : "none");
    if (s.solved) o << " (solved)";
    if (!s.lambda_type.empty()) o << ", " << s.lambda_type;
    if (!s.branch.empty()) o << ", branch " << s.branch;
    o << "\n";
  }
  std::size_t width = 0;
  for (const CheckResult& c : report.residuals.checks) width = std::max(width, c.name.size());
  for (const CheckResult& c : report.residuals.checks) {
    o << "  " << (c.passed() ? "PASS" : "FAIL") << (c.advisory ? "*" : " ") << " " << c.name
      << std::string(width - c.name.size(), ' ') << "  residual " << report_number(c.residual) << "  tol "
      << report_number(c.tolerance);
    if (!c.note.empty()) o << "  (" << c.note << ")";
    o << "\n";
  }
  o << "sampling: seed " << report.residuals.seed << ", " << report.residuals.samples << " samples, "
    << report.residuals.rejected << " rejected\n";
  for (const std::string& n : report.residuals.notes) o << "note: " << n << "\n";
  o << "* advisory\n";
  o << "result: " << (report.passed() ? "PASS" : "FAIL") << "\n";
  return o.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Almost contact metric structures and Ricci solitons"};
  app.require_subcommand(1);

  std::string file, format = "text";
  std::optional<double> tol;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  const auto run_options = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--samples", samples, "Sample count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Sampling seed");
  };

  CLI::App* verify = app.add_subcommand("verify", "Run the full verification suite on a document");
  verify->add_option("file", file, "Manifold document")->required();
  run_options(verify);
  CLI::App* classify = app.add_subcommand("classify", "Classify the structure in a document");
  classify->add_option("file", file, "Manifold document")->required();
  run_options(classify);

  std::string name, theta, output;
  BuiltinParams params;
  bool check = false;
  CLI::App* example = app.add_subcommand("example", "Write a document for a builtin scenario or θ(z)");
  CLI::Option* name_opt = example->add_option("name", name, "Builtin scenario");
  CLI::Option* theta_opt = example->add_option("--theta", theta, "θ(z) for the warped family");
  name_opt->excludes(theta_opt);
  example->add_option("--c", params.c, "ODE constant (fcosy_tanh)");
  example->add_option("--alpha", params.alpha, "α (kenmotsu_*)");
  example->add_option("--lambda", params.lambda, "λ (gaussian_soliton_flat)");
  example->add_flag("--check", check, "Verify the document");
  example->add_option("-o,--output", output, "Write the document here instead of stdout");
  run_options(example);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const RunOverrides overrides{tol, samples, seed};
  const auto emit = [&](const Report& r) {
    out << (format == "json" ? render_json(r) : render_text(r));
    return r.passed() ? 0 : 1;
  };
  try {
    if (*example) {
      if (name.empty() == theta.empty()) {
        err << "example: give a builtin name or --theta\n";
        return 2;
      }
      const Scenario s = theta.empty() ? builtin(name, params) : theta_scenario(xyz_chart().parse(theta));
      const ManifoldDocument doc = scenario_document(s);
      if (output.empty()) {
        out << document_to_json(doc);
      } else {
        save_document(doc, output);
      }
      return check ? emit(cmd_verify(parse_document(document_to_json(doc)), overrides)) : 0;
    }
    const ManifoldDocument doc = load_document(file);
    return emit(*verify ? cmd_verify(doc, overrides) : cmd_classify(doc, overrides));
  } catch (const DocumentError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const sym::ParseError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const SamplingError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace acm
