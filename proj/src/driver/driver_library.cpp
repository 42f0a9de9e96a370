#include "roughdrive/driver/driver_library.hpp"

#include <cmath>
#include <map>

#include "roughdrive/roughpath/brownian.hpp"

namespace rd {

namespace {

BasePath sample_smooth(double horizon, std::size_t m,
                       const std::function<Eigen::VectorXd(double)>& f) {
  auto grid = TimeGrid::uniform(horizon, m);
  std::vector<Eigen::VectorXd> s;
  s.reserve(grid.size());
  for (double t : grid.nodes()) s.push_back(f(t));
  return make_base_path(std::move(grid), std::move(s));
}

std::vector<Eigen::MatrixXd> smooth_mats() {
  Eigen::MatrixXd v1(2, 2), v2(2, 2);
  v1 << 0.20, 0.50, -0.30, 0.10;
  v2 << 0.00, -0.40, 0.25, 0.15;
  return {v1, v2};
}

Level2RoughPath smooth_lift() {
  auto base = sample_smooth(1.0, 64, [](double t) {
    Eigen::VectorXd x(2);
    x << std::sin(t), 0.5 * std::cos(2.0 * t);
    return x;
  });
  return Level2RoughPath::lift_piecewise_linear(std::move(base), 1.0);
}

std::map<std::string, BoundedDriver> build() {
  std::map<std::string, BoundedDriver> lib;

  {
    auto base = sample_smooth(1.0, 64, [](double t) {
      Eigen::VectorXd x(1);
      x << t;
      return x;
    });
    auto rp = Level2RoughPath::lift_piecewise_linear(std::move(base), 1.0);
    Eigen::MatrixXd v(1, 1);
    v << 0.8;
    lib.emplace("scalar", BoundedDriver::from_roughpath(rp, {v}, 1.0));

    Eigen::MatrixXd nil(2, 2);
    nil << 0.0, 1.0, 0.0, 0.0;
    lib.emplace("nilpotent", BoundedDriver::from_roughpath(rp, {nil}, 1.0));
  }
  lib.emplace("smooth2x2",
              BoundedDriver::from_roughpath(smooth_lift(), smooth_mats(), 1.0));
  {
    auto rp = Level2RoughPath::lift_piecewise_linear(
        sample_brownian_pl(42, 1.0, 256, 2), 0.4);
    Eigen::MatrixXd v1(2, 2), v2(2, 2);
    v1 << 0.15, 0.30, -0.20, 0.05;
    v2 << 0.00, -0.25, 0.20, 0.10;
    lib.emplace("brownian2x2", BoundedDriver::from_roughpath(rp, {v1, v2}, 0.4));
  }
  return lib;
}

const std::map<std::string, BoundedDriver>& lib() {
  static const std::map<std::string, BoundedDriver> l = build();
  return l;
}

}  // namespace

const BoundedDriver& driver_library(const std::string& id) {
  auto it = lib().find(id);
  if (it == lib().end()) throw Error("unknown driver '" + id + "'");
  return it->second;
}

std::vector<std::string> driver_library_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, d] : lib()) ids.push_back(id);
  return ids;
}

const std::vector<Eigen::MatrixXd>& smooth2x2_matrices() {
  static const std::vector<Eigen::MatrixXd> m = smooth_mats();
  return m;
}

const Level2RoughPath& smooth2x2_lift() {
  static const Level2RoughPath rp = smooth_lift();
  return rp;
}

}  // namespace rd
