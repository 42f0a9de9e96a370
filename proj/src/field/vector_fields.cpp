#include "roughdrive/field/vector_fields.hpp"

#include <cmath>
#include <map>

namespace rd {

namespace {

VectorField zero_field() {
  VectorField f;
  f.value = [](double, double) { return Vec2{0.0, 0.0}; };
  f.jacobian = [](double, double, double* out) {
    for (int i = 0; i < 4; ++i) out[i] = 0.0;
  };
  f.second = [](double, double, double* out) {
    for (int i = 0; i < 8; ++i) out[i] = 0.0;
  };
  f.divergence = [](double, double) { return 0.0; };
  f.grad_divergence = [](double, double) { return Vec2{0.0, 0.0}; };
  return f;
}

VectorField constant_field(double c1, double c2) {
  VectorField f = zero_field();
  f.value = [c1, c2](double, double) { return Vec2{c1, c2}; };
  return f;
}

// v = (sin x2, 0): divergence free shear
VectorField shear_field() {
  VectorField f = zero_field();
  f.value = [](double, double x2) { return Vec2{std::sin(x2), 0.0}; };
  f.jacobian = [](double, double x2, double* out) {
    out[0] = 0.0;
    out[1] = std::cos(x2);
    out[2] = 0.0;
    out[3] = 0.0;
  };
  f.second = [](double, double x2, double* out) {
    for (int i = 0; i < 8; ++i) out[i] = 0.0;
    out[((0 * 2) + 1) * 2 + 1] = -std::sin(x2);  // d^2 v_1 / dx2 dx2
  };
  return f;
}

// v = (sin x1, 0): compressible
VectorField compress_field() {
  VectorField f = zero_field();
  f.value = [](double x1, double) { return Vec2{std::sin(x1), 0.0}; };
  f.jacobian = [](double x1, double, double* out) {
    out[0] = std::cos(x1);
    out[1] = 0.0;
    out[2] = 0.0;
    out[3] = 0.0;
  };
  f.second = [](double x1, double, double* out) {
    for (int i = 0; i < 8; ++i) out[i] = 0.0;
    out[0] = -std::sin(x1);  // d^2 v_1 / dx1 dx1
  };
  f.divergence = [](double x1, double) { return std::cos(x1); };
  f.grad_divergence = [](double x1, double) { return Vec2{-std::sin(x1), 0.0}; };
  return f;
}

// v = (0, sin x1): divergence free, pairs with the shear for ell = 2
VectorField cross_field() {
  VectorField f = zero_field();
  f.value = [](double x1, double) { return Vec2{0.0, std::sin(x1)}; };
  f.jacobian = [](double x1, double, double* out) {
    out[0] = 0.0;
    out[1] = 0.0;
    out[2] = std::cos(x1);
    out[3] = 0.0;
  };
  f.second = [](double x1, double, double* out) {
    for (int i = 0; i < 8; ++i) out[i] = 0.0;
    out[((1 * 2) + 0) * 2 + 0] = -std::sin(x1);  // d^2 v_2 / dx1 dx1
  };
  return f;
}

// d = 1, v = sin x
VectorField sin1d_field() {
  VectorField f = zero_field();
  f.value = [](double x1, double) { return Vec2{std::sin(x1), 0.0}; };
  f.jacobian = [](double x1, double, double* out) {
    out[0] = std::cos(x1);
    out[1] = out[2] = out[3] = 0.0;
  };
  f.second = [](double x1, double, double* out) {
    for (int i = 0; i < 8; ++i) out[i] = 0.0;
    out[0] = -std::sin(x1);
  };
  f.divergence = [](double x1, double) { return std::cos(x1); };
  f.grad_divergence = [](double x1, double) { return Vec2{-std::sin(x1), 0.0}; };
  return f;
}

std::map<std::string, VectorFieldSet> build_library() {
  std::map<std::string, VectorFieldSet> lib;

  {
    VectorFieldSet s;
    s.id = "const1d";
    s.dim = 1;
    s.fields = {constant_field(1.0, 0.0)};
    s.divergence_free = true;
    s.kernel = kernels::FieldKernelId::Const1D;
    s.kernel_params.p = {1.0, 0.0, 0.0, 0.0};
    lib[s.id] = s;
  }
  {
    VectorFieldSet s;
    s.id = "sin1d";
    s.dim = 1;
    s.fields = {sin1d_field()};
    s.divergence_free = false;
    s.kernel = kernels::FieldKernelId::Sin1D;
    lib[s.id] = s;
  }
  {
    VectorFieldSet s;
    s.id = "const2d";
    s.dim = 2;
    s.fields = {constant_field(0.8, -0.45)};
    s.divergence_free = true;
    s.kernel = kernels::FieldKernelId::Const2D;
    s.kernel_params.p = {0.8, -0.45, 0.0, 0.0};
    lib[s.id] = s;
  }
  {
    VectorFieldSet s;
    s.id = "shear";
    s.dim = 2;
    s.fields = {shear_field()};
    s.divergence_free = true;
    s.kernel = kernels::FieldKernelId::Shear;
    lib[s.id] = s;
  }
  {
    VectorFieldSet s;
    s.id = "compress";
    s.dim = 2;
    s.fields = {compress_field()};
    s.divergence_free = false;
    s.kernel = kernels::FieldKernelId::Compress;
    lib[s.id] = s;
  }
  {
    VectorFieldSet s;
    s.id = "twofield";
    s.dim = 2;
    s.fields = {shear_field(), cross_field()};
    s.divergence_free = true;
    s.kernel = kernels::FieldKernelId::TwoField;
    lib[s.id] = s;
  }
  return lib;
}

const std::map<std::string, VectorFieldSet>& library() {
  static const std::map<std::string, VectorFieldSet> lib = build_library();
  return lib;
}

}  // namespace

const VectorFieldSet& field_library(const std::string& id) {
  auto it = library().find(id);
  if (it == library().end()) throw Error("unknown vector field set '" + id + "'");
  return it->second;
}

std::vector<std::string> field_library_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, s] : library()) ids.push_back(id);
  return ids;
}

double divergence_residual(const VectorFieldSet& set, const TorusGrid& g) {
  double worst = 0.0;
  for (const auto& f : set.fields) {
    const int n2 = set.dim == 1 ? 1 : g.n;
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < n2; ++i2)
        worst = std::max(worst, std::fabs(f.divergence(g.coord(i1), g.coord(i2))));
  }
  return worst;
}

}  // namespace rd
