#pragma once

#include <cstdint>

#include "roughdrive/transport/residuals.hpp"

namespace rd {

// Relative L^2 drift per time node; defined only for divergence-free
// field sets (the identity is not claimed otherwise).
struct ConservationReport {
  std::vector<double> drift;  // | ||f_t|| - ||f_0|| | / ||f_0||
  bool zero_norm = false;     // f_0 = 0: drift reported as 0, flagged
  double max_drift = 0.0;
};

ConservationReport conservation_report(const TransportSolution& sol);

// max_x |f_t| minus the sup of |f_0|. The reference is the exact analytic
// sup recorded with the datum (cross-checked against a fine probe grid),
// so the drift is nonpositive by construction.
struct MaxPrincipleReport {
  std::vector<double> drift;
  double sup_reference = 0.0;
  double max_drift = 0.0;
};

MaxPrincipleReport maximum_principle_report(const TransportSolution& sol);

// Adversarial variant used as a negative control: the datum is sampled on
// the solver grid and evaluated at the characteristic feet by bilinear
// interpolation, which overshoots where the interpolant exceeds the
// samples. Returns the max drift of that variant.
double interpolated_variant_max_drift(const TransportSolution& sol);

// Scalar C^3 renormalization maps: square, cube, tanh_bump.
const std::function<double(double)>& renorm_function(const std::string& id);
std::vector<std::string> renorm_function_ids();

// Cauchy-type stability table: solutions driven by PL approximations of
// the same Brownian sample at increasing dyadic resolution.
struct StabilityTable {
  std::vector<int> levels;                // dyadic exponents of the lift grids
  std::vector<std::vector<double>> dist;  // dist[a][b]: max-over-nodes L2 gap
  std::vector<double> consecutive;        // dist between levels m, m+1
};

StabilityTable stability_sweep(const VectorFieldSet& V, std::uint64_t seed,
                               const std::vector<int>& levels,
                               const InitialDatum& f0, double horizon,
                               const TimeGrid& times, const TorusGrid& space,
                               int substeps);

// Same sweep with the finest-level base path supplied directly (the
// dyadic restrictions are taken from it); comparisons across different
// samples are meaningless and not offered.
StabilityTable stability_sweep_from(const VectorFieldSet& V,
                                    const BasePath& fine,
                                    const std::vector<int>& levels,
                                    const InitialDatum& f0, const TimeGrid& times,
                                    const TorusGrid& space, int substeps);

}  // namespace rd
