#include "selftest.hpp"

#include "sharp/certify.hpp"
#include "sharp/designs.hpp"
#include "sharp/linsys.hpp"
#include "sharp/report.hpp"
#include "sharp/sharp_search.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace sharp;
using report::Json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kData = 3 };

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string resolve(const std::string& path) {
  return path.empty() ? path : std::filesystem::absolute(path).lexically_normal().string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

struct GlobalConfig {
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string output;
};

struct VerifyConfig {
  certify::CaseOptions options;
  std::string action = "projective";
  std::string group_file;
  std::string export_design;
  std::string export_graph;
};

struct LinsysConfig {
  std::string group_file;
  std::string subgroup_file;
  std::size_t t = 1;
  std::string ring;
  std::uint64_t p = 0;
  bool fpf = false;
  bool pin_identity = false;
  std::string probe;
  std::string export_file;
  std::uint64_t budget = linsys::kDefaultBranchBudget;
};

GroupEnumeration load_group(const std::string& path) {
  const auto spec = read_group_file(path);
  auto group = enumerate(spec);
  if (!group) throw DataError(path + ": group exceeds the enumeration cap");
  if (spec.expected_order && *spec.expected_order != group->order())
    throw DataError(path + ": generators produce order " + std::to_string(group->order()) +
                    ", file records " + std::to_string(*spec.expected_order));
  return std::move(*group);
}

linsys::ProbeOptions parse_probe(const std::string& text, std::uint64_t default_seed) {
  linsys::ProbeOptions probe;
  probe.seed = default_seed;
  std::stringstream stream(text);
  std::string field;
  while (std::getline(stream, field, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--probe", "expected key=value, got '" + field + "'");
    const auto key = field.substr(0, eq);
    std::uint64_t value = 0;
    try {
      value = std::stoull(field.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--probe", "bad number in '" + field + "'");
    }
    if (key == "keep") probe.keep = value;
    else if (key == "trials") probe.trials = value;
    else if (key == "seed") probe.seed = value;
    else throw CLI::ValidationError("--probe", "unknown key '" + key + "'");
  }
  if (probe.keep == 0 || probe.trials == 0) throw CLI::ValidationError("--probe", "keep and trials must be positive");
  return probe;
}

Json run_verify(const std::string& case_id, VerifyConfig config, const GlobalConfig& global) {
  auto& options = config.options;
  options.threads = global.threads;
  options.seed = global.seed;
  options.action = config.action == "vector" ? geometry::Action::vector : geometry::Action::projective;
  if (!config.group_file.empty()) options.group = read_group_file(config.group_file);
  if (!config.export_design.empty() || !config.export_graph.empty()) {
    const auto witt = designs::golay_witt_design();
    if (!config.export_design.empty()) write_file(config.export_design, designs::format_design(witt));
    if (!config.export_graph.empty())
      write_file(config.export_graph, designs::format_graph(designs::mclaughlin_graph(witt)));
  }
  return report::to_json(certify::run_case(case_id, options));
}

Json run_linsys(const LinsysConfig& config, const GlobalConfig& global) {
  Stopwatch clock;
  auto group = load_group(config.group_file);
  std::optional<GroupEnumeration> subgroup;
  if (!config.subgroup_file.empty()) subgroup = load_group(config.subgroup_file);
  if (config.t > 1) {
    group = induced_action(group, config.t).second;
    if (subgroup) subgroup = induced_action(*subgroup, config.t).second;
  }
  auto system = subgroup ? linsys::build_H_system(group, *subgroup) : linsys::build_full_system(group);
  if (config.fpf || config.pin_identity) system = linsys::restrict_to_fpf(system, group, config.pin_identity);
  if (!config.export_file.empty()) write_file(config.export_file, system.export_text());

  linsys::SolveOutcome outcome;
  if (!config.probe.empty()) {
    if (config.ring != "z" && config.ring != "znn") throw CLI::ValidationError("--probe", "requires --ring z or znn");
    auto probe = parse_probe(config.probe, global.seed);
    probe.nonnegative = config.ring == "znn";
    outcome = linsys::random_restriction_probe(system, probe);
  } else if (config.ring == "f_p") {
    if (!certify::is_prime(config.p)) throw CLI::ValidationError("--p", "--ring f_p needs a prime --p");
    outcome = linsys::solve_mod_p(system, config.p);
  } else if (config.ring == "q") {
    outcome = linsys::solve_rational(system);
  } else if (config.ring == "z") {
    outcome = linsys::solve_integer(system);
  } else {
    outcome = linsys::solve_nonneg_integer(system, config.budget);
  }
  return report::to_json(outcome, system, clock.elapsed_ms());
}

Json run_selftest_report() {
  Stopwatch clock;
  const auto checks = cli::run_selftest();
  Json out;
  out["kind"] = "selftest";
  out["checks"] = Json::array();
  bool passed = true;
  for (const auto& check : checks) {
    Json entry{{"name", check.name}, {"passed", check.passed}};
    if (!check.detail.empty()) entry["detail"] = check.detail;
    out["checks"].push_back(entry);
    passed = passed && check.passed;
  }
  out["passed"] = passed;
  out["elapsed_ms"] = clock.elapsed_ms();
  return out;
}

void add_verify_exports(CLI::App* command, VerifyConfig& config) {
  command->add_option("--export-design", config.export_design, "Write the Witt design S(4,7,23) to FILE")
      ->transform([](std::string path) { return resolve(path); });
  command->add_option("--export-graph", config.export_graph, "Write the McLaughlin graph to FILE")
      ->transform([](std::string path) { return resolve(path); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates against sharply transitive sets"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalConfig global;
  app.add_option("--threads", global.threads, "Worker threads for enumerated scans")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--seed", global.seed, "Seed for randomized steps");
  app.add_option("--output", global.output, "Write the JSON report to FILE and a summary to stdout")
      ->transform([](std::string path) { return resolve(path); });

  auto* verify = app.add_subcommand("verify", "Run a certificate case");
  verify->require_subcommand(1);
  std::string case_id;
  VerifyConfig verify_config;
  auto path_option = [](CLI::Option* option) {
    return option->transform([](std::string path) { return resolve(path); });
  };

  auto* sp = verify->add_subcommand("sp", "Sp(2n,q) on points or vectors, elliptic quadric certificate");
  sp->add_option("--n", verify_config.options.n, "Half-dimension")->required()->check(CLI::Range(1u, 8u));
  sp->add_option("--q", verify_config.options.q, "Field order 2^m")->default_val(2);
  sp->add_option("--action", verify_config.action, "projective or vector")
      ->check(CLI::IsMember({"projective", "vector"}));
  sp->add_flag("--enumerate-group", verify_config.options.enumerate_group,
               "Also scan every element of the group");
  sp->add_option("--modulus", verify_config.options.modulus, "Field modulus as a bitmask");
  sp->add_option("--cap", verify_config.options.cap, "Enumeration cap");
  add_verify_exports(sp, verify_config);

  auto* m22 = verify->add_subcommand("m22", "M22 on 22 points, Witt design certificate");
  path_option(m22->add_option("--group", verify_config.group_file, "Generator file for M22"));
  add_verify_exports(m22, verify_config);

  auto* mcl = verify->add_subcommand("mclaughlin", "McL:2 on the McLaughlin graph");
  add_verify_exports(mcl, verify_config);

  auto* alt = verify->add_subcommand("alt", "A_n on ordered pairs");
  alt->add_option("--n", verify_config.options.n, "Degree")->required()->check(CLI::Range(2u, 64u));
  alt->add_option("--cap", verify_config.options.cap, "Enumeration cap");
  add_verify_exports(alt, verify_config);

  auto* m23 = verify->add_subcommand("m23", "M23 by reduction to M22");
  path_option(m23->add_option("--group", verify_config.group_file, "Generator file for M22"));
  add_verify_exports(m23, verify_config);

  for (auto* command : {sp, m22, mcl, alt, m23})
    command->callback([&case_id, command] { case_id = command->get_name(); });

  auto* design = app.add_subcommand("design-check", "Symmetric design arithmetic");
  designs::SymmetricDesignParams params{};
  design->add_option("--v", params.v)->required();
  design->add_option("--k", params.k)->required();
  design->add_option("--lambda", params.lambda)->required();

  auto* search = app.add_subcommand("search-sharp", "Search for a sharply t-transitive subset");
  std::string search_group;
  std::size_t search_t = 1;
  std::uint64_t search_budget = search::kDefaultNodeBudget;
  path_option(search->add_option("--group", search_group, "Group file"))->required();
  search->add_option("--t", search_t)->required()->check(CLI::Range(std::size_t{1}, std::size_t{8}));
  search->add_option("--budget", search_budget, "Node budget");

  auto* lin = app.add_subcommand("linsys", "Build and solve the exact linear system");
  LinsysConfig lin_config;
  path_option(lin->add_option("--group", lin_config.group_file, "Group file"))->required();
  lin->add_option("--t", lin_config.t, "Act on ordered t-tuples")->check(CLI::Range(std::size_t{1}, std::size_t{8}));
  path_option(lin->add_option("--subgroup", lin_config.subgroup_file, "Subgroup H: solve the system on H-orbits of pairs"));
  lin->add_option("--ring", lin_config.ring)->required()->check(CLI::IsMember({"f_p", "q", "z", "znn"}));
  lin->add_option("--p", lin_config.p, "Prime for f_p");
  lin->add_flag("--fpf", lin_config.fpf, "Keep only fixed-point-free elements and the identity");
  lin->add_flag("--pin-identity", lin_config.pin_identity, "Fix the identity variable at 1");
  lin->add_option("--probe", lin_config.probe, "Random restriction: keep=N,trials=M,seed=S");
  path_option(lin->add_option("--export", lin_config.export_file, "Write the system matrix to FILE"));
  lin->add_option("--budget", lin_config.budget, "Branch budget for znn");

  auto* selftest = app.add_subcommand("selftest", "Run the invariant corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Json result;
    if (verify->parsed()) {
      result = run_verify(case_id, verify_config, global);
    } else if (design->parsed()) {
      result = report::to_json(designs::symmetric_design_refutation(params));
    } else if (search->parsed()) {
      Stopwatch clock;
      const auto group = load_group(search_group);
      const auto found = search::find_sharp_set(group, search_t, search_budget);
      result = report::to_json(found, std::filesystem::path(search_group).stem().string(), search_t,
                               clock.elapsed_ms());
    } else if (lin->parsed()) {
      result = run_linsys(lin_config, global);
    } else if (selftest->parsed()) {
      result = run_selftest_report();
    }

    if (global.output.empty()) {
      std::cout << report::render(result);
    } else {
      write_file(global.output, report::render(result));
      std::cout << report::summary(result) << "\n";
    }
    return kOk;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
