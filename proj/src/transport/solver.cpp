#include "roughdrive/transport/solver.hpp"

#include <cmath>

namespace rd {

TransportSolution transport_solve(const VectorFieldSet& V,
                                  const Level2RoughPath& rp,
                                  const InitialDatum& f0, const TimeGrid& times,
                                  const TorusGrid& space, int substeps,
                                  kernels::Backend backend) {
  if (f0.dim != space.dim) throw Error("transport_solve: datum dimension mismatch");
  if (substeps < 1) throw Error("transport_solve: substeps >= 1");
  const double horizon = rp.grid().horizon();

  TransportSolution sol;
  sol.times = times;
  sol.space = space;
  sol.field = V;
  sol.datum = f0;
  sol.path = rp;
  sol.substeps = substeps;
  sol.snapshots.reserve(times.size());

  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times.node(k);
    if (t == 0.0) {
      sol.snapshots.push_back(sample_grid(
          space, [&](double a, double b) { return f0.value(a, b); }));
      continue;
    }
    const int steps = std::max(
        1, static_cast<int>(std::llround(substeps * t / horizon)));
    auto feet = characteristics_solve(V, rp, t, space, steps, backend);
    GridFunction snap = GridFunction::zeros(space);
    const std::size_t np = space.points();
    for (std::size_t p = 0; p < np; ++p)
      snap.values[p] =
          f0.value(feet.y1[p], space.dim == 2 ? feet.y2[p] : 0.0);
    sol.snapshots.push_back(std::move(snap));
  }
  return sol;
}

TransportSolution transform_solution(const TransportSolution& sol,
                                     const std::function<double(double)>& h) {
  TransportSolution out = sol;
  for (auto& snap : out.snapshots)
    for (auto& v : snap.values) v = h(v);
  return out;
}

}  // namespace rd
