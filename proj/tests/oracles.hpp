#pragma once

// Independent numerical oracles for the test suites: classical RK4 on the
// projected ODE, the matrix exponential, and a small log-log order fit.
// These never touch the rough integrators they check.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

inline Eigen::MatrixXd expm(const Eigen::MatrixXd& a) { return a.exp(); }

// RK4 for f' = G(t) f with matrix-valued G, fixed step count.
template <class State>
State rk4_linear(const std::function<Eigen::MatrixXd(double)>& G, State f0,
                 double t0, double t1, int steps) {
  State f = f0;
  const double h = (t1 - t0) / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * h;
    const State k1 = G(t) * f;
    const State k2 = G(t + 0.5 * h) * (f + 0.5 * h * k1);
    const State k3 = G(t + 0.5 * h) * (f + 0.5 * h * k2);
    const State k4 = G(t + h) * (f + h * k3);
    f = f + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return f;
}

// least-squares slope of log(err) against log(h)
inline double order_fit(const std::vector<double>& h,
                        const std::vector<double>& err) {
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
