#include "roughdrive/field/initial_data.hpp"

#include <map>
#include <numbers>

namespace rd {

namespace {

std::map<std::string, InitialDatum> build() {
  const double pi = std::numbers::pi;
  const double half_pi = 0.5 * pi;
  std::map<std::string, InitialDatum> lib;

  // sup values are exact: each entry attains them at an explicit point.
  lib["one"] = InitialDatum{"one", 2, {{1.0, fn_const(1.0), fn_const(1.0)}}, 1.0};
  lib["sin1"] =
      InitialDatum{"sin1", 2, {{1.0, fn_sin(1.0, 0.0, 1.0), fn_const(1.0)}}, 1.0};
  // 0.6 sin(x1) cos(2 x2) + 0.4, sup attained at (pi/2, 0)
  lib["mix"] = InitialDatum{
      "mix",
      2,
      {{0.6, fn_sin(1.0, 0.0, 1.0), fn_sin(2.0, half_pi, 1.0)},
       {0.4, fn_const(1.0), fn_const(1.0)}},
      1.0};
  // separable periodized bump, sup 1 at (pi, pi)
  lib["bump"] = InitialDatum{
      "bump", 2, {{1.0, fn_bump(2.0, pi), fn_bump(2.0, pi)}}, 1.0};

  lib["sin1d"] =
      InitialDatum{"sin1d", 1, {{1.0, fn_sin(1.0, 0.0, 1.0), fn_const(1.0)}}, 1.0};
  lib["bump1d"] =
      InitialDatum{"bump1d", 1, {{1.0, fn_bump(2.0, pi), fn_const(1.0)}}, 1.0};
  return lib;
}

const std::map<std::string, InitialDatum>& lib() {
  static const std::map<std::string, InitialDatum> l = build();
  return l;
}

}  // namespace

const InitialDatum& initial_datum(const std::string& id) {
  auto it = lib().find(id);
  if (it == lib().end()) throw Error("unknown initial datum '" + id + "'");
  return it->second;
}

std::vector<std::string> initial_datum_ids(int dim) {
  std::vector<std::string> ids;
  for (const auto& [id, d] : lib())
    if (d.dim == dim) ids.push_back(id);
  return ids;
}

}  // namespace rd
