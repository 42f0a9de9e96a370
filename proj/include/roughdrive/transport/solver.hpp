#pragma once

#include "roughdrive/field/initial_data.hpp"
#include "roughdrive/transport/characteristics.hpp"

namespace rd {

// Snapshots of the rough transport solution f_t(x) = f_0(y(0)): the datum
// is evaluated analytically at the characteristic feet, never
// interpolated, which makes the maximum principle structural.
struct TransportSolution {
  TimeGrid times;
  TorusGrid space;
  std::vector<GridFunction> snapshots;
  VectorFieldSet field;
  InitialDatum datum;
  Level2RoughPath path;
  int substeps = 0;  // for the full path horizon; scaled per snapshot time
};

// times nodes must be nodes of rp's grid; substeps counts steps across
// the full horizon (each snapshot solve uses its proportional share).
TransportSolution transport_solve(
    const VectorFieldSet& V, const Level2RoughPath& rp, const InitialDatum& f0,
    const TimeGrid& times, const TorusGrid& space, int substeps,
    kernels::Backend backend = kernels::best_backend());

// Solutions depend pointwise on the datum only through composition, so
// transforming snapshots by a scalar map yields the candidate solution
// H(f) of the renormalization checks.
TransportSolution transform_solution(const TransportSolution& sol,
                                     const std::function<double(double)>& h);

}  // namespace rd
