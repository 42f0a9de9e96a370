#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "roughdrive/errors.hpp"

namespace rd {

// Declarative experiment description. Configs are strict JSON documents:
// unknown keys are rejected, required fields must be present, and sizes
// are validated against the desk-scale caps (time_m <= 4096, n <= 256,
// d <= 2). Defaults are resolved at validation time so the stored
// document is fully explicit.
class ExperimentConfig {
 public:
  static ExperimentConfig parse(const nlohmann::ordered_json& doc);
  static ExperimentConfig load_file(const std::filesystem::path& p);

  const nlohmann::ordered_json& doc() const { return doc_; }
  std::string kind() const { return doc_.at("kind").get<std::string>(); }
  std::uint64_t seed() const { return doc_.at("seed").get<std::uint64_t>(); }
  void override_seed(std::uint64_t s) { doc_["seed"] = s; }

  int geti(const std::string& key) const { return doc_.at(key).get<int>(); }
  double getd(const std::string& key) const { return doc_.at(key).get<double>(); }
  std::string gets(const std::string& key) const {
    return doc_.at(key).get<std::string>();
  }
  std::vector<int> getvi(const std::string& key) const {
    return doc_.at(key).get<std::vector<int>>();
  }
  std::vector<std::string> getvs(const std::string& key) const {
    return doc_.at(key).get<std::vector<std::string>>();
  }
  bool has(const std::string& key) const { return doc_.contains(key); }

 private:
  nlohmann::ordered_json doc_;
};

}  // namespace rd
