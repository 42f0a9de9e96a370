#include <cmath>
#include <stdexcept>

#include "roughdrive/kernels/field_step.hpp"
#include "kernels_internal.hpp"

namespace rd::kernels {

namespace detail {
void step_points_avx2(FieldKernelId id, const FieldKernelParams& par,
                      double* y1, double* y2, std::size_t n, const StepCoefs& c);
}

namespace {

using detail::wrap2pi_scalar;

void step_scalar(FieldKernelId id, const FieldKernelParams& par,
                 double* y1, double* y2, std::size_t n, const StepCoefs& c) {
  switch (id) {
    case FieldKernelId::Const1D: {
      const double d1 = par.p[0] * c.x[0];
      for (std::size_t i = 0; i < n; ++i) y1[i] += d1;
      wrap2pi_scalar(y1, n);
      return;
    }
    case FieldKernelId::Sin1D: {
      // v = sin(x): (v d/dx v) = sin cos
      const double a = c.x[0], b = c.xx[0];
      for (std::size_t i = 0; i < n; ++i) {
        const double s = std::sin(y1[i]), co = std::cos(y1[i]);
        y1[i] += a * s + b * s * co;
      }
      wrap2pi_scalar(y1, n);
      return;
    }
    case FieldKernelId::Const2D: {
      const double d1 = par.p[0] * c.x[0];
      const double d2 = par.p[1] * c.x[0];
      for (std::size_t i = 0; i < n; ++i) y1[i] += d1;
      for (std::size_t i = 0; i < n; ++i) y2[i] += d2;
      wrap2pi_scalar(y1, n);
      wrap2pi_scalar(y2, n);
      return;
    }
    case FieldKernelId::Shear: {
      // v = (sin x2, 0): second-order term vanishes, x2 is frozen
      const double a = c.x[0];
      for (std::size_t i = 0; i < n; ++i) y1[i] += a * std::sin(y2[i]);
      wrap2pi_scalar(y1, n);
      return;
    }
    case FieldKernelId::Compress: {
      // v = (sin x1, 0): (v.grad)v = (sin x1 cos x1, 0)
      const double a = c.x[0], b = c.xx[0];
      for (std::size_t i = 0; i < n; ++i) {
        const double s = std::sin(y1[i]), co = std::cos(y1[i]);
        y1[i] += a * s + b * s * co;
      }
      wrap2pi_scalar(y1, n);
      return;
    }
    case FieldKernelId::TwoField: {
      // v1 = (sin x2, 0), v2 = (0, sin x1)
      // (v2.grad)v1 = (sin x1 cos x2, 0), (v1.grad)v2 = (0, sin x2 cos x1)
      const double a1 = c.x[0], a2 = c.x[1];
      const double b21 = c.xx[1 * c.ell + 0], b12 = c.xx[0 * c.ell + 1];
      for (std::size_t i = 0; i < n; ++i) {
        const double s1 = std::sin(y1[i]), c1 = std::cos(y1[i]);
        const double s2 = std::sin(y2[i]), c2 = std::cos(y2[i]);
        y1[i] += a1 * s2 + b21 * s1 * c2;
        y2[i] += a2 * s1 + b12 * s2 * c1;
      }
      wrap2pi_scalar(y1, n);
      wrap2pi_scalar(y2, n);
      return;
    }
    case FieldKernelId::None:
      break;
  }
  throw std::invalid_argument("step_points: no kernel for this field id");
}

}  // namespace

bool has_step_kernel(FieldKernelId id) { return id != FieldKernelId::None; }

void step_points(FieldKernelId id, const FieldKernelParams& par,
                 std::span<double> y1, std::span<double> y2,
                 const StepCoefs& c, Backend b) {
  if (b == Backend::Avx2)
    detail::step_points_avx2(id, par, y1.data(), y2.data(), y1.size(), c);
  else
    step_scalar(id, par, y1.data(), y2.data(), y1.size(), c);
}

namespace detail {
void step_points_scalar_entry(FieldKernelId id, const FieldKernelParams& par,
                              double* y1, double* y2, std::size_t n,
                              const StepCoefs& c) {
  step_scalar(id, par, y1, y2, n, c);
}
}  // namespace detail

}  // namespace rd::kernels
