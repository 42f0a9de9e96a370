#pragma once

#include <optional>

#include "roughdrive/core/holder.hpp"
#include "roughdrive/field/test_functions.hpp"
#include "roughdrive/transport/solver.hpp"

namespace rd {

// Weak-formulation remainders of a transport solution against one test
// function: with P_t = <f_t, phi>,
//   flat_{ts}  = delta P_{ts} - X^i_{ts} <f_s, V_i* phi>
//   sharp_{ts} = flat_{ts} - XX^{jk}_{ts} <f_s, V_j* V_k* phi>
// and their fitted Hölder exponents (targets 2 gamma and 3 gamma; the
// plain increment delta P targets gamma).
struct ResidualSeries {
  std::string phi_id;
  TwoIndexMap<double> df, flat, sharp;
  std::optional<HolderReport> df_report, flat_report, sharp_report;
};

struct WeakResiduals {
  double gamma = 0.0;  // nominal exponent of the driving path
  std::vector<ResidualSeries> per_phi;
};

WeakResiduals weak_residuals(const TransportSolution& sol,
                             const std::vector<TestFunction>& bank, int m_min,
                             int m_max, double floor = 1e-13);

// Residual of the quadratic-form identity for f^2: with Q1 the
// multiplication term <f_s^2, A^{1,*} phi> and Q2 the assembled
// second-order quadratic form,
//   r_{ts} = delta <f^2, phi>_{ts} - Q1_{ts}(s) - Q2_{ts}(s).
// Q2 uses spectral derivatives of the evolved snapshots by default; the
// variational route replaces grad f_s by the flow-Jacobian transport of
// grad f_0 as an independent error channel.
enum class GradientRoute { Spectral, Variational };

struct GronwallResult {
  TwoIndexMap<double> residual;
  std::optional<HolderReport> report;
  double max_tail_fraction = 0.0;  // spectral resolution diagnostic
  bool resolution_warning = false;
};

GronwallResult gronwall_identity_residual(
    const TransportSolution& sol, const TestFunction& phi, int m_min, int m_max,
    GradientRoute route = GradientRoute::Spectral, double floor = 1e-13);

}  // namespace rd
