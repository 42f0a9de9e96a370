#pragma once

#include "roughdrive/field/torus_grid.hpp"
#include "roughdrive/field/vector_fields.hpp"
#include "roughdrive/roughpath/level2.hpp"

namespace rd {

// Number of worker threads: ROUGHDRIVE_THREADS when set, otherwise 1.
int thread_count();

// Backward characteristic feet: for every grid point x the time-0 point
// y(0) of dy_r = -V(y_r) dX_r with terminal condition y_t = x, realized
// as a forward second-order step scheme on the negated time-reversed
// lift. Solves for distinct points are independent and run in parallel.
struct CharacteristicFeet {
  TorusGrid grid;
  std::vector<double> y1;
  std::vector<double> y2;  // empty for d = 1
  int substeps_used = 0;
};

CharacteristicFeet characteristics_solve(
    const VectorFieldSet& V, const Level2RoughPath& rp, double t,
    const TorusGrid& g, int substeps,
    kernels::Backend backend = kernels::best_backend());

// Same solve carrying the flow Jacobian J = dy(0)/dx per point (row-major
// d x d); generic per-point path, used by the variational cross-checks.
struct CharacteristicFeetJacobian {
  CharacteristicFeet feet;
  std::vector<double> jac;  // d*d per point
};

CharacteristicFeetJacobian characteristics_solve_with_jacobian(
    const VectorFieldSet& V, const Level2RoughPath& rp, double t,
    const TorusGrid& g, int substeps);

}  // namespace rd
