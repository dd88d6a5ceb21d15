// eulerian: command-line front end for the polynomial families, the
// statistic bundle, MFS orbits, continued fractions and the identity checks.

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eulerian/cfrac.hpp"
#include "eulerian/families.hpp"
#include "eulerian/permstats.hpp"
#include "eulerian/polycore.hpp"
#include "eulerian/verify.hpp"

namespace {

using namespace eulerian;
using nlohmann::ordered_json;

constexpr int kUsageError = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string render(const MultiPoly& p, const std::string& format) {
  if (format == "json") return to_json(p);
  if (format == "latex") return to_text(p, TextStyle::Latex);
  return to_text(p, TextStyle::Unicode);
}

std::map<Var, Coeff> parse_evals(const std::vector<std::string>& specs) {
  std::map<Var, Coeff> out;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw UsageError("--eval expects var=int, got '" + spec + "'");
    }
    const Var v = parse_var(spec.substr(0, eq));
    Coeff value;
    if (value.set_str(spec.substr(eq + 1), 10) != 0) {
      throw UsageError("--eval value is not an integer: '" + spec + "'");
    }
    out[v] = value;
  }
  return out;
}

fam::FamilyId family_arg(const std::string& name) {
  try {
    return fam::parse_family(name);
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }
}

std::optional<fam::Route> route_arg(const std::string& name) {
  if (name.empty()) return std::nullopt;
  try {
    return fam::parse_route(name);
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }
}

perm::Permutation perm_arg(const std::string& text) {
  try {
    return perm::Permutation::parse(text);
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }
}

ordered_json poly_value(const MultiPoly& p) { return ordered_json::parse(to_json(p)); }

// ---------------------------------------------------------------------------

struct ComputeArgs {
  std::string family;
  unsigned n = 0;
  std::string route;
  std::vector<std::string> evals;
  std::string format = "text";
};

int run_compute(const ComputeArgs& args) {
  const auto f = family_arg(args.family);
  const auto route = route_arg(args.route);
  const auto evals = parse_evals(args.evals);
  if (route && !fam::has_route(f, *route)) {
    throw UsageError("family " + args.family + " has no route " + args.route);
  }
  MultiPoly p = fam::compute(f, args.n, route);
  for (const auto& [v, value] : evals) p = eval_at(p, v, value);
  std::cout << render(p, args.format) << "\n";
  return 0;
}

int run_stats(const std::string& text) {
  const auto pi = perm_arg(text);
  ordered_json doc;
  doc["perm"] = pi.to_string();
  if (pi.is_standard()) {
    for (const auto& [name, value] : perm::named_fields(perm::stats(pi))) doc[name] = value;
  } else {
    // cycle and position statistics need the ground set [n]
    perm::StatBundle bundle;
    static_cast<perm::LinearStats&>(bundle) = perm::linear_stats(pi);
    const std::vector<std::string> linear = {"des",  "asc",    "inv",         "maj",  "ai",
                                             "dd",   "da",     "da_star",     "peak", "valley",
                                             "valley_star", "p231", "p312", "fmax"};
    for (const auto& [name, value] : perm::named_fields(bundle)) {
      if (std::find(linear.begin(), linear.end(), name) != linear.end()) doc[name] = value;
    }
  }
  std::cout << doc.dump() << "\n";
  return 0;
}

struct GammaArgs {
  std::string family;
  unsigned n = 0;
  std::string route;
  std::string format = "text";
};

int run_gamma(const GammaArgs& args) {
  const auto f = family_arg(args.family);
  const unsigned center = fam::gamma_center(f, args.n);
  const MultiPoly p = fam::compute(f, args.n, route_arg(args.route));
  const auto gammas = gamma_expand(p, center);
  if (args.format == "json") {
    ordered_json doc;
    doc["family"] = args.family;
    doc["n"] = args.n;
    doc["center"] = center;
    doc["gamma"] = ordered_json::array();
    for (const auto& g : gammas) doc["gamma"].push_back(poly_value(g));
    std::cout << doc.dump() << "\n";
    return 0;
  }
  std::string line = "[";
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (k > 0) line += ", ";
    line += render(gammas[k], args.format);
  }
  std::cout << line << "]\n";
  return 0;
}

int run_cf(const std::string& preset, unsigned N, const std::string& format) {
  cfrac::JSpec spec;
  try {
    spec = cfrac::preset(preset);
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }
  const auto mu = cfrac::moments(spec, N);
  if (format == "json") {
    ordered_json doc;
    doc["preset"] = preset;
    doc["N"] = N;
    doc["moments"] = ordered_json::array();
    for (const auto& m : mu) doc["moments"].push_back(poly_value(m));
    std::cout << doc.dump() << "\n";
    return 0;
  }
  for (unsigned k = 0; k <= N; ++k) {
    const std::string label = format == "latex" ? "\\mu_{" + std::to_string(k) + "}"
                                                : "μ_" + std::to_string(k);
    std::cout << label << " = " << render(mu[k], format) << "\n";
  }
  return 0;
}

struct OrbitArgs {
  std::optional<unsigned> n;
  std::string perm;
  std::optional<int> hop;
  bool raw = false;
  bool prw_only = false;
  bool json = false;
};

ordered_json orbit_json(const perm::Orbit& orbit) {
  ordered_json doc;
  doc["representative"] = orbit.representative.to_string();
  doc["size"] = orbit.members.size();
  doc["ai"] = perm::linear_stats(orbit.representative).ai;
  doc["des"] = perm::linear_stats(orbit.representative).des;
  doc["members"] = ordered_json::array();
  for (const auto& m : orbit.members) doc["members"].push_back(m.to_string());
  return doc;
}

void print_orbit(const perm::Orbit& orbit) {
  const auto s = perm::linear_stats(orbit.representative);
  std::cout << orbit.representative.to_string() << "  size=" << orbit.members.size()
            << "  des=" << s.des << "  ai=" << s.ai << "  {";
  for (std::size_t i = 0; i < orbit.members.size(); ++i) {
    if (i > 0) std::cout << ' ';
    std::cout << orbit.members[i].to_string();
  }
  std::cout << "}\n";
}

int run_orbits(const OrbitArgs& args) {
  if (args.n.has_value() == !args.perm.empty()) {
    throw UsageError("orbits needs exactly one of --n or --perm");
  }
  if (args.hop && args.perm.empty()) throw UsageError("--hop requires --perm");
  if (args.raw && !args.hop) throw UsageError("--raw only applies to --hop");

  if (args.n) {
    if (*args.n > 9) throw UsageError("orbits --n is limited to n <= 9");
    const auto orbits = perm::prw_orbits(static_cast<int>(*args.n) + 1);
    if (args.json) {
      ordered_json doc;
      doc["n"] = *args.n;
      doc["orbits"] = ordered_json::array();
      for (const auto& o : orbits) doc["orbits"].push_back(orbit_json(o));
      std::cout << doc.dump() << "\n";
    } else {
      for (const auto& o : orbits) print_orbit(o);
    }
    return 0;
  }

  const auto sigma = perm_arg(args.perm);
  if (!sigma.is_standard()) throw UsageError("orbits needs a permutation of [n]");
  if (args.prw_only && !perm::is_prw(sigma)) {
    throw UsageError(sigma.to_string() + " is not a PRW permutation");
  }
  if (args.hop) {
    if (*args.hop < 1 || *args.hop > sigma.size()) {
      throw UsageError("--hop letter must lie in [n]");
    }
    const auto image =
        args.raw ? perm::mfs_hop(sigma, *args.hop) : perm::mfs_hop_prime(sigma, *args.hop);
    if (args.json) {
      ordered_json doc;
      doc["perm"] = sigma.to_string();
      doc["hop"] = *args.hop;
      doc["raw"] = args.raw;
      doc["image"] = image.to_string();
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << image.to_string() << "\n";
    }
    return 0;
  }
  const auto orbit = perm::mfs_orbit(sigma);
  if (args.json) {
    std::cout << orbit_json(orbit).dump() << "\n";
  } else {
    print_orbit(orbit);
  }
  return 0;
}

struct VerifyArgs {
  std::vector<std::string> ids;
  std::optional<unsigned> max_n;
  bool all = false;
  bool json = false;
  bool strict = false;
};

int emit_reports(const std::vector<verify::Report>& reports, bool json, bool strict) {
  if (json) {
    std::cout << verify::reports_json(reports, strict) << "\n";
  } else {
    for (const auto& r : reports) std::cout << verify::format_report(r) << "\n";
  }
  return verify::exit_code(reports, strict);
}

int run_verify(const VerifyArgs& args) {
  if (args.all == !args.ids.empty()) throw UsageError("verify needs --all or at least one --id");
  std::vector<verify::Report> reports;
  if (args.all) {
    std::map<std::string, unsigned> budget;
    if (args.max_n) {
      // clamp to each check's cap so a global --max-n never turns into skips
      for (const auto& info : verify::identities()) {
        budget[info.id] = std::min(*args.max_n, info.max_n);
      }
    }
    reports = verify::run_all(budget);
  } else {
    for (const auto& id : args.ids) {
      try {
        (void)verify::info(id);
      } catch (const std::invalid_argument& err) {
        throw UsageError(err.what());
      }
      reports.push_back(verify::run(id, args.max_n));
    }
  }
  return emit_reports(reports, args.json, args.strict);
}

int run_conjecture(const std::string& which, std::optional<unsigned> max_n, bool json,
                   bool strict) {
  std::string id;
  if (which == "5.1") {
    id = "conj_5_1";
  } else if (which == "5.2") {
    id = "conj_5_2";
  } else {
    throw UsageError("--which must be 5.1 or 5.2");
  }
  return emit_reports({verify::run(id, max_n)}, json, strict);
}

int run_list() {
  ordered_json doc;
  doc["families"] = ordered_json::parse(fam::registry_json());
  doc["identities"] = ordered_json::array();
  for (const auto& info : verify::identities()) {
    ordered_json row;
    row["id"] = info.id;
    row["kind"] = std::string(verify::kind_name(info.kind));
    row["min_n"] = info.min_n;
    row["default_n"] = info.default_n;
    row["max_n"] = info.max_n;
    row["description"] = info.description;
    doc["identities"].push_back(std::move(row));
  }
  doc["presets"] = cfrac::preset_names();
  std::cout << doc.dump() << "\n";
  return 0;
}

void add_jobs(CLI::App* cmd, int& jobs) {
  cmd->add_option("--jobs", jobs, "Worker threads for enumeration routes")
      ->check(CLI::Range(1, 256));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eulerian-type polynomial families, statistics and identity checks"};
  app.require_subcommand(1);

  int jobs = 1;
  const std::vector<std::string> formats = {"text", "json", "latex"};

  ComputeArgs compute;
  auto* c_compute = app.add_subcommand("compute", "Construct a family member");
  c_compute->add_option("--family", compute.family, "Family id")->required();
  c_compute->add_option("--n", compute.n, "Index n")->required();
  c_compute->add_option("--route", compute.route, "Route (default: the family default)");
  c_compute->add_option("--eval", compute.evals, "Integer specialization var=int")
      ->take_all();
  c_compute->add_option("--format", compute.format, "text, json or latex")
      ->check(CLI::IsMember(formats));
  add_jobs(c_compute, jobs);

  std::string stats_perm;
  auto* c_stats = app.add_subcommand("stats", "Statistic bundle of a permutation as JSON");
  c_stats->add_option("--perm", stats_perm, "Permutation word or cycle form")->required();

  GammaArgs gamma;
  auto* c_gamma = app.add_subcommand("gamma", "Gamma coefficients of a palindromic family");
  c_gamma->add_option("--family", gamma.family, "Family id")->required();
  c_gamma->add_option("--n", gamma.n, "Index n")->required();
  c_gamma->add_option("--route", gamma.route, "Route (default: the family default)");
  c_gamma->add_option("--format", gamma.format, "text, json or latex")
      ->check(CLI::IsMember(formats));
  add_jobs(c_gamma, jobs);

  std::string cf_preset;
  unsigned cf_N = 0;
  std::string cf_format = "json";
  auto* c_cf = app.add_subcommand("cf", "Moments mu_0..mu_N of a continued-fraction preset");
  c_cf->add_option("--preset", cf_preset, "Preset name")->required();
  c_cf->add_option("--N", cf_N, "Last moment index")->required();
  c_cf->add_option("--format", cf_format, "json (default), text or latex")
      ->check(CLI::IsMember(formats));

  OrbitArgs orbit;
  auto* c_orbits = app.add_subcommand("orbits", "MFS orbits on PRW_{n+1} or of one permutation");
  c_orbits->add_option("--n", orbit.n, "List every orbit of PRW_{n+1}");
  c_orbits->add_option("--perm", orbit.perm, "Orbit of this permutation");
  c_orbits->add_option("--hop", orbit.hop, "Apply the modified hop at this letter");
  c_orbits->add_flag("--raw", orbit.raw, "With --hop, apply the unmodified hop");
  c_orbits->add_flag("--prw-only", orbit.prw_only, "Reject permutations outside PRW");
  c_orbits->add_flag("--json", orbit.json, "JSON output");

  VerifyArgs verify_args;
  auto* c_verify = app.add_subcommand("verify", "Run identity checks");
  c_verify->add_option("--id", verify_args.ids, "Identity id (repeatable)");
  c_verify->add_option("--max-n", verify_args.max_n, "Upper end of the n range");
  c_verify->add_flag("--all", verify_args.all, "Run every check");
  c_verify->add_flag("--json", verify_args.json, "JSON report");
  c_verify->add_flag("--strict-conjectures", verify_args.strict,
                     "Count conjecture failures as theorem failures");
  add_jobs(c_verify, jobs);

  std::string which;
  std::optional<unsigned> conj_max_n;
  bool conj_json = false;
  bool conj_strict = false;
  auto* c_conj = app.add_subcommand("conjecture", "Bounded scan of a log-concavity conjecture");
  c_conj->add_option("--which", which, "5.1 or 5.2")->required();
  c_conj->add_option("--max-n", conj_max_n, "Upper end of the scan");
  c_conj->add_flag("--json", conj_json, "JSON report");
  c_conj->add_flag("--strict-conjectures", conj_strict, "Exit with 1 on a counterexample");

  auto* c_list = app.add_subcommand("list", "Registry of families, routes, checks and presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  perm::set_jobs(jobs);
  try {
    if (*c_compute) return run_compute(compute);
    if (*c_stats) return run_stats(stats_perm);
    if (*c_gamma) return run_gamma(gamma);
    if (*c_cf) return run_cf(cf_preset, cf_N, cf_format);
    if (*c_orbits) return run_orbits(orbit);
    if (*c_verify) return run_verify(verify_args);
    if (*c_conj) return run_conjecture(which, conj_max_n, conj_json, conj_strict);
    if (*c_list) return run_list();
  } catch (const UsageError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsageError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
