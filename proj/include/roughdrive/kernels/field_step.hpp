#pragma once

#include <array>
#include <span>

#include "roughdrive/kernels/dispatch.hpp"

namespace rd::kernels {

// Batched characteristic-step kernels for the built-in vector field sets.
// Arbitrary analytic fields go through the generic per-point path in the
// transport module; these cover the shipped field library where the step
// is a handful of sin/cos evaluations per point.
enum class FieldKernelId { None, Const1D, Sin1D, Const2D, Shear, Compress, TwoField };

// Rough increments of the driving path over one substep: x[i] is the
// level-1 increment, xx[j*ell + k] the level-2 increment XX^{jk}.
struct StepCoefs {
  int ell = 0;
  std::array<double, 4> x{};
  std::array<double, 16> xx{};
};

// Static kernel parameters (the constant velocity components for Const*).
struct FieldKernelParams {
  std::array<double, 4> p{};
};

bool has_step_kernel(FieldKernelId id);

// One explicit second-order step, all points at once:
//   y <- y + sum_i v_i(y) x[i] + sum_jk ((v_j . grad) v_k)(y) xx[jk]
// with the right-hand side frozen at the incoming y, then a periodic wrap
// into [0, 2pi). y2 is ignored by the 1-d kernels.
void step_points(FieldKernelId id, const FieldKernelParams& par,
                 std::span<double> y1, std::span<double> y2,
                 const StepCoefs& c, Backend b = best_backend());

}  // namespace rd::kernels
