#include "roughdrive/harness/report.hpp"

#include <chrono>
#include <fstream>

#include "roughdrive/kernels/dispatch.hpp"
#include "roughdrive/version.hpp"

namespace rd {

Check check_le(const std::string& name, double value, double limit) {
  return Check{name, value, limit, false, value <= limit};
}

Check check_ge(const std::string& name, double value, double limit) {
  return Check{name, value, limit, true, value >= limit};
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  doc["backend"] = kernels::backend_name(kernels::best_backend());
  doc["config"] = config;
  doc["results"] = results;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["value"] = c.value;
    j["limit"] = c.limit;
    j["op"] = c.greater_is_pass ? ">=" : "<=";
    j["pass"] = c.pass;
    arr.push_back(std::move(j));
  }
  doc["checks"] = std::move(arr);
  doc["pass"] = passed();
  return doc;
}

std::string Report::serialize() const { return to_json().dump(2) + "\n"; }

nlohmann::ordered_json holder_report_json(const std::string& phi_id,
                                          double gamma_target,
                                          const HolderReport& rep) {
  nlohmann::ordered_json j;
  j["phi_id"] = phi_id;
  j["gamma_target"] = gamma_target;
  j["slope"] = rep.slope;
  j["scales"] = rep.scales_used;
  j["per_scale_sup"] = rep.per_scale_sup;
  return j;
}

void write_report(const Report& rep, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "report.json", std::ios::binary);
    out << rep.serialize();
  }
  {
    nlohmann::ordered_json meta;
    const auto now = std::chrono::system_clock::now();
    meta["written_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            now.time_since_epoch())
            .count();
    std::ofstream out(out_dir / "report.meta.json", std::ios::binary);
    out << meta.dump(2) << "\n";
  }
  for (const auto& [name, contents] : rep.csv) {
    std::ofstream out(out_dir / name, std::ios::binary);
    out << contents;
  }
}

}  // namespace rd
