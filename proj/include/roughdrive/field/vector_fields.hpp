#pragma once

#include <functional>
#include <string>
#include <vector>

#include "roughdrive/field/torus_grid.hpp"
#include "roughdrive/kernels/field_step.hpp"

namespace rd {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

// One analytic vector field on the torus with coded derivatives; no
// numerical differentiation happens anywhere in the operator algebra.
struct VectorField {
  // v(x) in R^d (y component unused for d = 1)
  std::function<Vec2(double, double)> value;
  // Jacobian, out[i*2+j] = d v_i / d x_j
  std::function<void(double, double, double*)> jacobian;
  // second derivatives, out[((i*2)+j)*2+k] = d^2 v_i / (d x_j d x_k)
  std::function<void(double, double, double*)> second;
  std::function<double(double, double)> divergence;
  std::function<Vec2(double, double)> grad_divergence;
};

enum class FieldRegularity { C1b, C2b, C3b };

struct VectorFieldSet {
  std::string id;
  int dim = 2;
  std::vector<VectorField> fields;  // V_1 .. V_ell
  FieldRegularity regularity = FieldRegularity::C3b;
  bool divergence_free = false;
  kernels::FieldKernelId kernel = kernels::FieldKernelId::None;
  kernels::FieldKernelParams kernel_params;

  int ell() const { return static_cast<int>(fields.size()); }
};

// Built-in library: const1d, sin1d, const2d, shear, compress, twofield.
const VectorFieldSet& field_library(const std::string& id);
std::vector<std::string> field_library_ids();

// Max of |div v_i| over the grid; the divergence_free flag promises this
// stays below 1e-12.
double divergence_residual(const VectorFieldSet& set, const TorusGrid& g);

}  // namespace rd
