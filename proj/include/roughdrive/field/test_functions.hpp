#pragma once

#include <string>
#include <vector>

#include "roughdrive/field/analytic.hpp"
#include "roughdrive/field/torus_grid.hpp"
#include "roughdrive/field/vector_fields.hpp"

namespace rd {

// Analytic test function with partial derivatives up to third order and a
// recorded W^{3,inf} norm bound.
struct TestFunction {
  std::string id;
  int dim = 2;
  std::vector<SepTerm> terms;
  double w3_norm = 0.0;

  double value(double x1, double x2) const { return sep_partial(terms, 0, 0, x1, x2); }
  double partial(int a1, int a2, double x1, double x2) const {
    return sep_partial(terms, a1, a2, x1, x2);
  }
  Vec2 grad(double x1, double x2) const {
    return Vec2{partial(1, 0, x1, x2),
                dim == 2 ? partial(0, 1, x1, x2) : 0.0};
  }
};

const TestFunction& test_function(const std::string& id);
std::vector<std::string> test_function_ids(int dim);
// The shipped bank used by the residual suites.
std::vector<TestFunction> default_test_bank(int dim);

// First-order action V phi = v . grad(phi), sampled on the grid.
GridFunction apply_V(const VectorField& V, const TestFunction& phi,
                     const TorusGrid& g);

// Adjoint action V* phi = -v . grad(phi) - div(v) phi.
GridFunction apply_Vstar(const VectorField& V, const TestFunction& phi,
                         const TorusGrid& g);

// Composition outer* (inner* phi), expanded through the coded derivative
// closures of both fields and phi (no numerical differentiation).
GridFunction apply_VstarVstar(const VectorField& outer, const VectorField& inner,
                              const TestFunction& phi, const TorusGrid& g);

}  // namespace rd
