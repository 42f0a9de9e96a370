// roughdrive CLI: declarative experiments, acceptance suites, and the
// catalogs of shipped fields / test functions.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "roughdrive/errors.hpp"
#include "roughdrive/field/initial_data.hpp"
#include "roughdrive/field/test_functions.hpp"
#include "roughdrive/harness/experiments.hpp"
#include "roughdrive/harness/suites.hpp"
#include "roughdrive/version.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir,
            long long seed_override) {
  auto cfg = rd::ExperimentConfig::load_file(config_path);
  if (seed_override >= 0)
    cfg.override_seed(static_cast<std::uint64_t>(seed_override));
  rd::Report rep = rd::run_experiment(cfg);
  rd::write_report(rep, out_dir);
  for (const auto& c : rep.checks)
    std::printf("[%s] %-40s value=%.6g limit %s %.6g\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value,
                c.greater_is_pass ? ">=" : "<=", c.limit);
  std::printf("report: %s/report.json\n", out_dir.c_str());
  return rep.passed() ? 0 : 1;
}

int cmd_suite(const std::string& name, const std::string& out_dir) {
  std::vector<int> ids;
  if (name != "all") {
    for (const auto& [id, nm] : rd::acceptance_names())
      if (nm == name) ids.push_back(id);
    if (ids.empty()) {
      std::fprintf(stderr, "unknown suite '%s'; available:\n", name.c_str());
      for (const auto& [id, nm] : rd::acceptance_names())
        std::fprintf(stderr, "  %2d  %s\n", id, nm.c_str());
      return 2;
    }
  }
  auto results = rd::run_acceptance(ids);
  bool all_pass = true;
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass();
    std::printf("[%s] %2d %-22s (%zu checks, %.1fs)\n",
                r.pass() ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.checks.size(), r.seconds);
    for (const auto& c : r.checks)
      if (!c.pass)
        std::printf("       FAIL %s: value=%.6g limit %s %.6g\n", c.name.c_str(),
                    c.value, c.greater_is_pass ? ">=" : "<=", c.limit);
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["name"] = r.name;
    j["pass"] = r.pass();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : r.checks)
      arr.push_back({{"name", c.name},
                     {"value", c.value},
                     {"limit", c.limit},
                     {"op", c.greater_is_pass ? ">=" : "<="},
                     {"pass", c.pass}});
    j["checks"] = std::move(arr);
    doc.push_back(std::move(j));
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / "suite.json",
                      std::ios::binary);
    out << doc.dump(2) << "\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rough-signal numerics harness"};
  app.set_version_flag("--version", rd::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", suite_name = "all";
  long long seed_override = -1;

  auto* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("config", config_path, "JSON experiment config")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed_override, "override the config seed");

  auto* suite = app.add_subcommand("suite", "run a named acceptance suite");
  suite->add_option("name", suite_name, "suite name or 'all'");
  std::string suite_out;
  suite->add_option("--out", suite_out, "write suite.json here");

  auto* lf = app.add_subcommand("list-fields", "list shipped vector field sets");
  auto* lt = app.add_subcommand("list-testfns",
                                "list shipped test functions and data");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, seed_override);
    if (suite->parsed()) return cmd_suite(suite_name, suite_out);
    if (lf->parsed()) {
      for (const auto& id : rd::field_library_ids()) {
        const auto& s = rd::field_library(id);
        std::printf("%-10s d=%d ell=%d%s\n", id.c_str(), s.dim, s.ell(),
                    s.divergence_free ? " divergence-free" : "");
      }
      return 0;
    }
    if (lt->parsed()) {
      for (int dim : {1, 2}) {
        for (const auto& id : rd::test_function_ids(dim))
          std::printf("testfn %-8s d=%d W3=%.3g\n", id.c_str(), dim,
                      rd::test_function(id).w3_norm);
        for (const auto& id : rd::initial_datum_ids(dim))
          std::printf("datum  %-8s d=%d sup=%.3g\n", id.c_str(), dim,
                      rd::initial_datum(id).sup_abs);
      }
      return 0;
    }
  } catch (const rd::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const rd::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
