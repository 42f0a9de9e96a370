#include "roughdrive/harness/config.hpp"

#include <fstream>
#include <set>

namespace rd {

namespace {

using Json = nlohmann::ordered_json;

enum class Kind { Int, Num, Str, IntList, StrList };

struct Field {
  const char* name;
  Kind kind;
  bool required = false;
  Json def;  // used when not required
  double lo = 0.0, hi = 0.0;
  bool ranged = false;
};

Field req_int(const char* n, double lo, double hi) {
  return {n, Kind::Int, true, {}, lo, hi, true};
}
Field opt_int(const char* n, int def, double lo, double hi) {
  return {n, Kind::Int, false, def, lo, hi, true};
}
Field opt_num(const char* n, double def, double lo, double hi) {
  return {n, Kind::Num, false, def, lo, hi, true};
}
Field req_str(const char* n) { return {n, Kind::Str, true, {}}; }
Field opt_str(const char* n, const char* def) { return {n, Kind::Str, false, def}; }

const std::vector<Field>& fields_for(const std::string& kind) {
  static const std::map<std::string, std::vector<Field>> spec = {
      {"sew-demo",
       {opt_int("levels", 12, 1, 24), opt_int("time_m", 8, 1, 4096)}},
      {"lift",
       {opt_str("path", "spiral"), opt_int("time_m", 64, 1, 4096),
        opt_int("ell", 2, 1, 4), opt_num("horizon", 1.0, 1e-6, 64.0),
        opt_num("gamma", 1.0, 0.34, 1.0)}},
      {"integrate-matrix",
       {req_str("driver"), opt_str("scheme", "euler"),
        opt_int("refine", 32, 1, 256), opt_int("iters", 16, 1, 64)}},
      {"lyons-series",
       {req_str("driver"), opt_int("n_max", 8, 2, 12),
        opt_int("levels", 10, 1, 20)}},
      {"transport",
       {req_str("field"), req_str("datum"), opt_str("path", "brownian"),
        opt_int("time_m", 1024, 1, 4096), opt_int("snapshots", 64, 2, 512),
        opt_int("substeps", 1024, 1, 4096), opt_int("n", 128, 8, 256),
        opt_num("gamma", 0.4, 0.34, 1.0),
        {"test_functions", Kind::StrList, false, Json::array()},
        {"renormalize", Kind::StrList, false, Json::array()},
        opt_int("m_min", 3, 0, 12), opt_int("m_max", 6, 1, 12)}},
      {"smoothing-check",
       {opt_int("n", 128, 8, 256), opt_int("j0", 3, 1, 8),
        opt_int("eps_pow_min", 1, 0, 20), opt_int("eps_pow_max", 8, 0, 20),
        opt_int("modes", 64, 1, 256)}},
      {"gronwall",
       {req_str("field"), req_str("datum"), opt_str("phi", "sincos"),
        opt_str("route", "spectral"), opt_int("time_m", 1024, 1, 4096),
        opt_int("snapshots", 64, 2, 512), opt_int("substeps", 1024, 1, 4096),
        opt_int("n", 128, 8, 256), opt_num("gamma", 0.4, 0.34, 1.0),
        opt_int("m_min", 3, 0, 12), opt_int("m_max", 6, 1, 12)}},
      {"stability",
       {req_str("field"), req_str("datum"),
        {"levels", Kind::IntList, false, Json{6, 7, 8, 9, 10}},
        opt_int("snapshots", 8, 2, 64), opt_int("substeps", 512, 1, 4096),
        opt_int("n", 64, 8, 256), opt_num("horizon", 1.0, 1e-6, 64.0)}},
  };
  auto it = spec.find(kind);
  if (it == spec.end())
    throw ConfigError("config: unknown kind '" + kind + "'");
  return it->second;
}

void check_type(const Json& v, const Field& f) {
  const std::string path = std::string("config.") + f.name;
  switch (f.kind) {
    case Kind::Int:
      if (!v.is_number_integer())
        throw ConfigError(path + ": expected an integer");
      break;
    case Kind::Num:
      if (!v.is_number()) throw ConfigError(path + ": expected a number");
      break;
    case Kind::Str:
      if (!v.is_string()) throw ConfigError(path + ": expected a string");
      break;
    case Kind::IntList:
      if (!v.is_array()) throw ConfigError(path + ": expected an array of ints");
      for (const auto& e : v)
        if (!e.is_number_integer())
          throw ConfigError(path + ": expected an array of ints");
      break;
    case Kind::StrList:
      if (!v.is_array())
        throw ConfigError(path + ": expected an array of strings");
      for (const auto& e : v)
        if (!e.is_string())
          throw ConfigError(path + ": expected an array of strings");
      break;
  }
  if (f.ranged && (f.kind == Kind::Int || f.kind == Kind::Num)) {
    const double x = v.get<double>();
    if (x < f.lo || x > f.hi)
      throw ConfigError(path + ": value " + v.dump() + " outside [" +
                        std::to_string(f.lo) + ", " + std::to_string(f.hi) + "]");
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const nlohmann::ordered_json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  if (!doc.contains("kind") || !doc.at("kind").is_string())
    throw ConfigError("config.kind: required string");
  const std::string kind = doc.at("kind").get<std::string>();
  const auto& fields = fields_for(kind);

  std::set<std::string> allowed = {"kind", "seed"};
  for (const auto& f : fields) allowed.insert(f.name);
  for (const auto& [key, value] : doc.items())
    if (!allowed.count(key))
      throw ConfigError("config." + key + ": unknown key for kind '" + kind + "'");

  ExperimentConfig cfg;
  cfg.doc_["kind"] = kind;
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_integer() || doc.at("seed").get<long long>() < 0)
      throw ConfigError("config.seed: expected a nonnegative integer");
    cfg.doc_["seed"] = doc.at("seed").get<std::uint64_t>();
  } else {
    cfg.doc_["seed"] = 1;
  }
  for (const auto& f : fields) {
    if (doc.contains(f.name)) {
      check_type(doc.at(f.name), f);
      cfg.doc_[f.name] = doc.at(f.name);
    } else if (f.required) {
      throw ConfigError(std::string("config.") + f.name + ": required field missing");
    } else {
      cfg.doc_[f.name] = f.def;
    }
  }

  // cross-field constraints
  if (kind == "transport" || kind == "gronwall") {
    const int m = cfg.geti("time_m"), snaps = cfg.geti("snapshots");
    if (m % snaps != 0)
      throw ConfigError("config.snapshots: must divide time_m");
    if (cfg.geti("m_min") >= cfg.geti("m_max"))
      throw ConfigError("config.m_min: must be below m_max");
  }
  if (kind == "smoothing-check" &&
      cfg.geti("eps_pow_min") > cfg.geti("eps_pow_max"))
    throw ConfigError("config.eps_pow_min: must not exceed eps_pow_max");
  if (kind == "stability") {
    auto levels = cfg.getvi("levels");
    if (levels.size() < 2)
      throw ConfigError("config.levels: need at least two levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (levels[i] < 1 || levels[i] > 12)
        throw ConfigError("config.levels: entries must lie in [1, 12]");
      if (i && levels[i] <= levels[i - 1])
        throw ConfigError("config.levels: must be strictly increasing");
    }
  }
  const int n_grid = cfg.has("n") ? cfg.geti("n") : 8;
  if ((n_grid & (n_grid - 1)) != 0)
    throw ConfigError("config.n: must be a power of two");
  return cfg;
}

ExperimentConfig ExperimentConfig::load_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("config: cannot open '" + p.string() + "'");
  nlohmann::ordered_json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  return parse(doc);
}

}  // namespace rd
