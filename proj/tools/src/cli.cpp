#include "gcx_cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gcx/json_io.hpp"
#include "gcx/verify.hpp"

namespace gcx::cli {

namespace {

using verify::CheckReport;
using verify::Region;
using verify::RunOptions;

struct Tolerances {
  double first_order = 1e-9;
  double second_order = 1e-8;
  double quotient_identity = 1e-12;
};

Tolerances tolerances(const RunConfig& c) {
  Tolerances t;
  if (c.tol) t = Tolerances{*c.tol, *c.tol, *c.tol};
  return t;
}

std::string summary_line(const CheckReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-4s %-24s max_residual=%.3e tol=%.1e samples=%zu",
                r.pass ? "PASS" : "FAIL", r.check.c_str(), r.max_residual, r.tolerance,
                r.samples);
  return buf;
}

void run_group(const std::string& group, const RunConfig& c, std::vector<CheckReport>& out) {
  const RunOptions run{c.seed, c.samples, c.jobs};
  const Tolerances tol = tolerances(c);
  const models::SurgeryGeometry& g = c.geometry;
  if (group == "local-model") {
    out.push_back(verify::check_local_model_types(run));
    out.push_back(verify::check_integrability({Region::kCPlane, g, {}, false}, run, tol.first_order));
    out.push_back(verify::check_polar_compatibility(g, run, tol.first_order));
  } else if (group == "surgery") {
    out.push_back(verify::check_symplectomorphism(g, run, tol.first_order));
    for (Region r : {Region::kPolar, Region::kBump, Region::kOuter}) {
      out.push_back(verify::check_integrability({r, g, {}, false}, run, tol.first_order));
    }
    verify::HCheckOptions h;
    h.closedness_tol = tol.second_order;
    out.push_back(verify::check_h_properties(g, run, h));
    out.push_back(verify::check_twist_sign(g, run));
    std::vector<models::SurgeryGeometry> tori;
    for (double r_out : {g.r_out, 0.5 * (1.0 + g.r_out), 2.0 * g.r_out - 1.0}) {
      tori.push_back({g.r_min, r_out, g.profile});
    }
    out.push_back(verify::check_simultaneous_surgery(tori, run, tol.first_order));
  } else if (group == "quotient") {
    verify::QuotientTolerances qt;
    qt.identity = tol.quotient_identity;
    for (const auto& params : c.quotient_params) {
      out.push_back(verify::check_quotient(params, g, run, qt));
      out.push_back(verify::check_integrability({Region::kQuotient, g, params, false}, run,
                                                tol.first_order));
    }
  } else if (group == "locus") {
    out.push_back(verify::check_locus(run, tol.first_order));
  } else if (group == "algebra") {
    out.push_back(verify::check_clifford_relation(run, c.tol.value_or(1e-12)));
    out.push_back(verify::check_pairing_signature());
    out.push_back(verify::check_annihilators(run, c.tol.value_or(1e-10)));
    out.push_back(verify::check_bracket_b_transform(true, run, tol.second_order));
    out.push_back(verify::check_bracket_b_transform(false, run, tol.second_order));
    out.push_back(verify::check_bracket_shift_sign(run));
  } else {
    throw ContractError("unknown check group '" + group + "'");
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open input file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ContractError("input file '" + path + "' is not valid JSON: " + e.what());
  }
}

RunResult run_normal_form(const RunConfig& c) {
  const Multiform rho = multiform_from_json(read_json_file(*c.input));
  const NormalForm nf = normal_form(rho);
  RunResult result;
  result.document = to_json(nf);
  result.document["nondegenerate"] = check_nondegenerate(nf);
  result.summary.push_back("type " + std::to_string(nf.type) +
                           (nf.gauge_unique ? "" : " (B + i omega fixed by minimal norm)"));
  return result;
}

RunResult run_bracket(const RunConfig& c) {
  const nlohmann::json j = read_json_file(*c.input);
  require(j.is_object() && j.contains("u") && j.contains("v") && j.contains("point"),
          "bracket input needs \"u\", \"v\" and \"point\"");
  const GcVectorExprs ue = gc_vector_exprs_from_json(j["u"]);
  const GcVectorExprs ve = gc_vector_exprs_from_json(j["v"]);
  require(ue.dim == ve.dim, "bracket: u and v have different dimensions");
  const int dim = ue.dim;
  FormField h;
  if (j.contains("H")) {
    h = FormField::from_exprs(form_exprs_from_json(j["H"]));
    require(h.dim() == dim, "bracket: H has the wrong dimension");
  }
  require(j["point"].is_array() && j["point"].size() == std::size_t(dim),
          "bracket: \"point\" must list dim coordinates");
  std::array<double, kMaxDim> coords{};
  for (int i = 0; i < dim; ++i) {
    require(j["point"][i].is_number(), "bracket: point coordinates must be numbers");
    coords[i] = j["point"][i].get<double>();
  }
  const ChartPoint p = ChartPoint::make(ChartId::kGeneric, dim, coords);
  const GcVector b = courant_bracket(GcVectorField::from_exprs(dim, ue.vec, ue.cov),
                                     GcVectorField::from_exprs(dim, ve.vec, ve.cov), h, p);
  RunResult result;
  result.document = {{"bracket", to_json(b)}, {"point", j["point"]}};
  result.summary.push_back("bracket evaluated at 1 point");
  return result;
}

}  // namespace

const std::vector<std::string>& check_groups() {
  static const std::vector<std::string> groups = {"local-model", "surgery", "quotient", "locus",
                                                  "algebra"};
  return groups;
}

std::vector<models::LogModelParams> default_quotient_params() {
  return {{1, 0}, {2, 1}, {3, 2}, {5, 2}};
}

void RunConfig::validate() const {
  require(samples >= 1, "--samples must be at least 1");
  require(jobs >= 1, "--jobs must be at least 1");
  require(!tol || *tol > 0.0, "--tol must be positive");
  geometry.validate();
  for (const auto& p : quotient_params) p.validate();
  if (command == Command::kCheck) {
    require(!checks.empty(), "no checks requested");
    for (const auto& c : checks) {
      const auto& g = check_groups();
      require(c == "all" || std::find(g.begin(), g.end(), c) != g.end(),
              "unknown check '" + c + "'");
    }
  } else {
    require(input.has_value(), "--input is required");
  }
}

RunResult run(const RunConfig& config) {
  config.validate();
  if (config.command == Command::kNormalForm) return run_normal_form(config);
  if (config.command == Command::kBracket) return run_bracket(config);

  std::vector<std::string> groups;
  for (const auto& c : config.checks) {
    if (c == "all") {
      groups.insert(groups.end(), check_groups().begin(), check_groups().end());
    } else {
      groups.push_back(c);
    }
  }
  std::vector<CheckReport> reports;
  std::optional<std::string> internal;
  try {
    for (const auto& g : groups) run_group(g, config, reports);
  } catch (const InternalError& e) {
    internal = e.what();  // keep the reports finished so far
  }
  RunResult result;
  result.document = nlohmann::json::array();
  bool all_pass = true;
  for (const auto& r : reports) {
    result.document.push_back(r.to_json());
    result.summary.push_back(summary_line(r));
    all_pass = all_pass && r.pass;
  }
  if (internal) {
    result.summary.push_back("internal error: " + *internal);
    result.exit_code = kExitInternal;
  } else {
    result.exit_code = all_pass ? kExitPass : kExitFail;
  }
  return result;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for generalized complex structures in dimension four"};
  app.require_subcommand(1);
  RunConfig config;
  std::string check;
  std::optional<int> m;
  std::optional<int> k;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Sampling seed")->envname("GCX_SEED");
    sub->add_option("--samples", config.samples, "Samples per check");
    sub->add_option("--tol", config.tol, "Tolerance override for every check");
    sub->add_option("--r-min", config.geometry.r_min, "Inner radius cut-off");
    sub->add_option("--r-out", config.geometry.r_out, "Outer radius of the bump");
    sub->add_option("--m", m, "Quotient multiplicity");
    sub->add_option("--k", k, "Quotient twist, co-prime with m");
    sub->add_option("--output", config.output, "Write the JSON document here");
    sub->add_option("--jobs", config.jobs, "Worker threads");
  };
  CLI::App* check_cmd = app.add_subcommand("check", "Run verification checks");
  std::vector<std::string> choices = check_groups();
  choices.push_back("all");
  check_cmd->add_option("which", check, "Check group")->required()->check(CLI::IsMember(choices));
  add_common(check_cmd);
  CLI::App* nf_cmd = app.add_subcommand("normal-form", "Normal form of a spinor from JSON");
  nf_cmd->add_option("--input", config.input, "Multiform JSON file")->required();
  add_common(nf_cmd);
  CLI::App* br_cmd = app.add_subcommand("bracket", "Courant bracket of two fields at a point");
  br_cmd->add_option("--input", config.input, "JSON with u, v, H and point")->required();
  add_common(br_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (*check_cmd) {
    config.command = Command::kCheck;
    config.checks = {check};
  } else if (*nf_cmd) {
    config.command = Command::kNormalForm;
  } else {
    config.command = Command::kBracket;
  }
  if (m || k) {
    if (!m || !k) {
      err << "usage error: --m and --k must be given together\n";
      return kExitUsage;
    }
    config.quotient_params = {{*m, *k}};
  } else {
    config.quotient_params = default_quotient_params();
  }

  RunResult result;
  try {
    result = run(config);
  } catch (const ContractError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  const std::string text = result.document.dump(2) + "\n";
  std::ostream& summary = config.output ? out : err;
  if (config.output) {
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) {
      err << "usage error: cannot write '" << *config.output << "'\n";
      return kExitUsage;
    }
    file << text;
  } else {
    out << text;
  }
  for (const auto& line : result.summary) summary << line << "\n";
  return result.exit_code;
}

}  // namespace gcx::cli
