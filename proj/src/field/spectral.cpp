#include "roughdrive/field/spectral.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "roughdrive/kernels/reduce.hpp"

namespace rd {

namespace {

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

void run_dft(const TorusGrid& g, std::complex<double>* in,
             std::complex<double>* out, int sign) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    if (g.dim == 1)
      plan = fftw_plan_dft_1d(g.n, reinterpret_cast<fftw_complex*>(in),
                              reinterpret_cast<fftw_complex*>(out), sign,
                              FFTW_ESTIMATE);
    else
      plan = fftw_plan_dft_2d(g.n, g.n, reinterpret_cast<fftw_complex*>(in),
                              reinterpret_cast<fftw_complex*>(out), sign,
                              FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
  }
}

inline int freq_of(int k, int n) { return k <= n / 2 ? k : k - n; }

// |kappa|^2 for the flat spectral index
inline double kappa_sq(const TorusGrid& g, std::size_t idx) {
  if (g.dim == 1) {
    const int k = freq_of(static_cast<int>(idx), g.n);
    return static_cast<double>(k) * k;
  }
  const int k1 = freq_of(static_cast<int>(idx) / g.n, g.n);
  const int k2 = freq_of(static_cast<int>(idx) % g.n, g.n);
  return static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
}

GridFunction apply_multiplier(const GridFunction& f,
                              const std::function<std::complex<double>(
                                  const TorusGrid&, std::size_t)>& mult) {
  auto spec = dft_forward(f);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= mult(f.grid, i);
  return dft_inverse(f.grid, spec);
}

}  // namespace

std::vector<std::complex<double>> dft_forward(const GridFunction& f) {
  const std::size_t n = f.grid.points();
  std::vector<std::complex<double>> in(n), out(n);
  for (std::size_t i = 0; i < n; ++i) in[i] = f.values[i];
  run_dft(f.grid, in.data(), out.data(), FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& c : out) c *= scale;
  return out;
}

GridFunction dft_inverse(const TorusGrid& g,
                         const std::vector<std::complex<double>>& spec) {
  if (spec.size() != g.points()) throw Error("dft_inverse: size mismatch");
  std::vector<std::complex<double>> in(spec), out(spec.size());
  run_dft(g, in.data(), out.data(), FFTW_BACKWARD);
  GridFunction f = GridFunction::zeros(g);
  for (std::size_t i = 0; i < out.size(); ++i) f.values[i] = out[i].real();
  return f;
}

double pairing(const GridFunction& f, const GridFunction& phi) {
  if (!(f.grid == phi.grid)) throw Error("pairing: grid mismatch");
  return f.grid.cell_volume() * kernels::dot(f.values, phi.values);
}

double sobolev_norm(const GridFunction& f, int k) {
  if (k < -3 || k > 3) throw Error("sobolev_norm: k must lie in [-3, 3]");
  auto spec = dft_forward(f);
  const double vol_factor = std::pow(2.0 * std::numbers::pi, f.grid.dim);
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    acc += std::pow(1.0 + kappa_sq(f.grid, i), k) * std::norm(spec[i]);
  return std::sqrt(vol_factor * acc);
}

GridFunction smoothing(const GridFunction& f, double eps, int j0) {
  if (!(eps > 0.0) || eps > 1.0) throw Error("smoothing: eps must lie in (0, 1]");
  if (j0 < 1) throw Error("smoothing: j0 >= 1 required");
  return apply_multiplier(f, [eps, j0](const TorusGrid& g, std::size_t i) {
    return std::complex<double>(
        std::pow(1.0 + eps * kappa_sq(g, i), -static_cast<double>(j0)), 0.0);
  });
}

GridFunction spectral_derivative(const GridFunction& f, int axis) {
  if (axis < 0 || axis >= f.grid.dim)
    throw Error("spectral_derivative: bad axis");
  const int n = f.grid.n;
  return apply_multiplier(f, [axis, n](const TorusGrid& g, std::size_t i) {
    int k;
    if (g.dim == 1)
      k = freq_of(static_cast<int>(i), n);
    else
      k = axis == 0 ? freq_of(static_cast<int>(i) / n, n)
                    : freq_of(static_cast<int>(i) % n, n);
    if (k == n / 2) k = 0;  // Nyquist mode has no well-defined derivative
    return std::complex<double>(0.0, static_cast<double>(k));
  });
}

double spectral_tail_fraction(const GridFunction& f) {
  auto spec = dft_forward(f);
  const int n = f.grid.n;
  double total = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double e = std::norm(spec[i]);
    total += e;
    int k1, k2 = 0;
    if (f.grid.dim == 1) {
      k1 = freq_of(static_cast<int>(i), n);
    } else {
      k1 = freq_of(static_cast<int>(i) / n, n);
      k2 = freq_of(static_cast<int>(i) % n, n);
    }
    const int kinf = std::max(std::abs(k1), std::abs(k2));
    if (kinf >= n / 2 - 1) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

double l2_norm(const GridFunction& f) {
  return std::sqrt(f.grid.cell_volume() * kernels::dot(f.values, f.values));
}

double max_abs(const GridFunction& f) { return kernels::max_abs(f.values); }

SmoothingSweep smoothing_estimate_sweep(const TorusGrid& g, int j0,
                                        int eps_pow_min, int eps_pow_max,
                                        int dictionary_modes) {
  // single-mode dictionary with geometric frequency coverage up to Nyquist
  std::vector<std::pair<int, int>> modes;
  const std::vector<int> axis = {0, 1, 2, 4, 8, 16, 32, g.n / 2 - 1};
  if (g.dim == 1) {
    for (int k : axis)
      if (k > 0) modes.emplace_back(k, 0);
  } else {
    for (int k1 : axis)
      for (int k2 : axis) {
        if (k1 == 0 && k2 == 0) continue;
        modes.emplace_back(k1, k2);
        if (static_cast<int>(modes.size()) >= dictionary_modes) break;
      }
  }
  if (static_cast<int>(modes.size()) > dictionary_modes)
    modes.resize(dictionary_modes);

  // per-mode norm tables: norms are hoisted out of the (n, k) loops so the
  // sweep stays a few thousand transforms
  const int npow = eps_pow_max - eps_pow_min + 1;
  std::vector<std::array<double, 4>> f_norm(modes.size());
  std::vector<std::vector<std::array<double, 4>>> jf_norm(
      modes.size(), std::vector<std::array<double, 4>>(npow));
  std::vector<std::vector<std::array<double, 4>>> diff_norm = jf_norm;

  for (std::size_t mi = 0; mi < modes.size(); ++mi) {
    auto [k1, k2] = modes[mi];
    GridFunction f = sample_grid(g, [&](double x1, double x2) {
      return std::cos(k1 * x1 + k2 * x2);
    });
    for (int m = 0; m <= 3; ++m) f_norm[mi][m] = sobolev_norm(f, m);
    for (int p = eps_pow_min; p <= eps_pow_max; ++p) {
      const double eps = std::pow(2.0, -p);
      const GridFunction jf = smoothing(f, eps, j0);
      GridFunction diff = f;
      for (std::size_t i = 0; i < diff.values.size(); ++i)
        diff.values[i] = jf.values[i] - f.values[i];
      for (int m = 0; m <= 3; ++m) {
        jf_norm[mi][p - eps_pow_min][m] = sobolev_norm(jf, m);
        diff_norm[mi][p - eps_pow_min][m] = sobolev_norm(diff, m);
      }
    }
  }

  SmoothingSweep sweep;
  for (int n = 0; n <= 3; ++n) {
    for (int k = 0; n + k <= 3; ++k) {
      for (int p = eps_pow_min; p <= eps_pow_max; ++p) {
        const double eps = std::pow(2.0, -p);
        const double gain = std::pow(eps, 0.5 * std::min(k, 2));
        double c1 = 0.0, c2 = 0.0;
        for (std::size_t mi = 0; mi < modes.size(); ++mi) {
          const auto& jfn = jf_norm[mi][p - eps_pow_min];
          const auto& dfn = diff_norm[mi][p - eps_pow_min];
          c1 = std::max(c1, dfn[n] / (gain * f_norm[mi][n + k]));
          c2 = std::max(c2, jfn[n + k] * std::pow(eps, 0.5 * k) / f_norm[mi][n]);
        }
        sweep.rows.push_back({n, k, eps, c1, c2});
        sweep.worst_c_approx = std::max(sweep.worst_c_approx, c1);
        sweep.worst_c_bound = std::max(sweep.worst_c_bound, c2);
      }
    }
  }
  return sweep;
}

}  // namespace rd
