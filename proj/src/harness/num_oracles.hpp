#pragma once

// Reference numerics used by the experiment checks and acceptance suites:
// classical RK4 on the projected smooth ODE, the Padé matrix exponential,
// and a log-log order fit. Independent of the rough integrators.

#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "roughdrive/core/holder.hpp"

namespace rd::harness {

inline Eigen::MatrixXd expm(const Eigen::MatrixXd& a) { return a.exp(); }

template <class State>
State rk4_linear(const std::function<Eigen::MatrixXd(double)>& g, State f0,
                 double t0, double t1, int steps) {
  State f = f0;
  const double h = (t1 - t0) / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * h;
    const State k1 = g(t) * f;
    const State k2 = g(t + 0.5 * h) * (f + 0.5 * h * k1);
    const State k3 = g(t + 0.5 * h) * (f + 0.5 * h * k2);
    const State k4 = g(t + h) * (f + h * k3);
    f = f + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return f;
}

inline double order_fit(const std::vector<double>& h,
                        const std::vector<double>& err) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < h.size(); ++i) {
    lx.push_back(std::log(h[i]));
    ly.push_back(std::log(err[i]));
  }
  return linear_fit(lx, ly).first;
}

}  // namespace rd::harness
