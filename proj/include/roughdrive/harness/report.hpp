#pragma once

#include <map>

#include "roughdrive/core/holder.hpp"
#include "roughdrive/harness/config.hpp"

namespace rd {

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool greater_is_pass = false;  // value >= limit passes (else <=)
  bool pass = false;
};

Check check_le(const std::string& name, double value, double limit);
Check check_ge(const std::string& name, double value, double limit);

// Experiment output: a deterministic JSON document (config, results and
// pass/fail checks), a separate metadata file for timestamps, plus CSV
// tables. Identical config and seed reproduce report.json byte for byte.
struct Report {
  nlohmann::ordered_json config;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  std::map<std::string, std::string> csv;  // filename -> contents

  bool passed() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  nlohmann::ordered_json to_json() const;  // deterministic part
  std::string serialize() const;           // pretty, trailing newline
};

nlohmann::ordered_json holder_report_json(const std::string& phi_id,
                                          double gamma_target,
                                          const HolderReport& rep);

// Writes report.json, report.meta.json and the CSV tables into out_dir.
void write_report(const Report& rep, const std::filesystem::path& out_dir);

}  // namespace rd
