#include "roughdrive/transport/residuals.hpp"

#include <cmath>

#include "roughdrive/field/spectral.hpp"

namespace rd {

namespace {

using DenseTable = std::vector<double>;

TwoIndexMap<double> to_map(const TimeGrid& g, DenseTable table) {
  return TwoIndexMap<double>::from_table(g, std::move(table));
}

std::optional<HolderReport> try_fit(const TwoIndexMap<double>& m, int m_min,
                                    int m_max, double floor) {
  try {
    return estimate_holder_exponent(m, m_min, m_max, floor);
  } catch (const EstimationError&) {
    return std::nullopt;
  }
}

GridFunction multiply(const GridFunction& a, const GridFunction& b) {
  GridFunction out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
  return out;
}

// v_i . grad(u) with grad(u) supplied componentwise
GridFunction dot_with_field(const VectorField& v, const TorusGrid& g,
                            const GridFunction& ux, const GridFunction* uy) {
  GridFunction out = GridFunction::zeros(g);
  std::size_t idx = 0;
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i, ++idx)
      out.values[idx] = v.value(g.coord(i), 0.0).x * ux.values[idx];
  } else {
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2, ++idx) {
        const Vec2 vv = v.value(g.coord(i1), g.coord(i2));
        out.values[idx] = vv.x * ux.values[idx] + vv.y * uy->values[idx];
      }
  }
  return out;
}

}  // namespace

WeakResiduals weak_residuals(const TransportSolution& sol,
                             const std::vector<TestFunction>& bank, int m_min,
                             int m_max, double floor) {
  const TimeGrid& tg = sol.times;
  const TorusGrid& g = sol.space;
  const int ell = sol.field.ell();
  const std::size_t nn = tg.size();
  const std::size_t tsize = nn * (nn + 1) / 2;

  WeakResiduals out;
  out.gamma = sol.path.gamma_nominal();

  // path increments at snapshot node pairs
  std::vector<Eigen::VectorXd> xinc(tsize, Eigen::VectorXd::Zero(ell));
  std::vector<Eigen::MatrixXd> xxinc(tsize, Eigen::MatrixXd::Zero(ell, ell));
  for (std::size_t j = 1; j < nn; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const std::size_t idx = TwoIndexMap<double>::table_index(i, j);
      xinc[idx] = sol.path.increment(tg.node(i), tg.node(j));
      xxinc[idx] = sol.path.iterated(tg.node(i), tg.node(j));
    }

  for (const auto& phi : bank) {
    if (phi.dim != g.dim) throw Error("weak_residuals: test function dimension");
    ResidualSeries series;
    series.phi_id = phi.id;

    GridFunction phig =
        sample_grid(g, [&](double a, double b) { return phi.value(a, b); });
    std::vector<GridFunction> vstar_phi, vv_phi;  // V_i* phi; V_j* V_k* phi
    for (int i = 0; i < ell; ++i)
      vstar_phi.push_back(apply_Vstar(sol.field.fields[i], phi, g));
    for (int j = 0; j < ell; ++j)
      for (int k = 0; k < ell; ++k)
        vv_phi.push_back(apply_VstarVstar(sol.field.fields[j],
                                          sol.field.fields[k], phi, g));

    std::vector<double> p(nn);
    std::vector<std::vector<double>> q(ell, std::vector<double>(nn));
    std::vector<std::vector<double>> r(ell * ell, std::vector<double>(nn));
    for (std::size_t k = 0; k < nn; ++k) {
      p[k] = pairing(sol.snapshots[k], phig);
      for (int i = 0; i < ell; ++i) q[i][k] = pairing(sol.snapshots[k], vstar_phi[i]);
      for (int jk = 0; jk < ell * ell; ++jk)
        r[jk][k] = pairing(sol.snapshots[k], vv_phi[jk]);
    }

    DenseTable tdf(tsize, 0.0), tflat(tsize, 0.0), tsharp(tsize, 0.0);
    for (std::size_t j = 1; j < nn; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        const std::size_t idx = TwoIndexMap<double>::table_index(i, j);
        const double df = p[j] - p[i];
        double flat = df;
        for (int a = 0; a < ell; ++a) flat -= xinc[idx][a] * q[a][i];
        double sharp = flat;
        for (int a = 0; a < ell; ++a)
          for (int b = 0; b < ell; ++b)
            sharp -= xxinc[idx](a, b) * r[a * ell + b][i];
        tdf[idx] = df;
        tflat[idx] = flat;
        tsharp[idx] = sharp;
      }

    series.df = to_map(tg, std::move(tdf));
    series.flat = to_map(tg, std::move(tflat));
    series.sharp = to_map(tg, std::move(tsharp));
    series.df_report = try_fit(series.df, m_min, m_max, floor);
    series.flat_report = try_fit(series.flat, m_min, m_max, floor);
    series.sharp_report = try_fit(series.sharp, m_min, m_max, floor);
    out.per_phi.push_back(std::move(series));
  }
  return out;
}

GronwallResult gronwall_identity_residual(const TransportSolution& sol,
                                          const TestFunction& phi, int m_min,
                                          int m_max, GradientRoute route,
                                          double floor) {
  const TimeGrid& tg = sol.times;
  const TorusGrid& g = sol.space;
  const int ell = sol.field.ell();
  const std::size_t nn = tg.size();
  const std::size_t tsize = nn * (nn + 1) / 2;

  GridFunction phig =
      sample_grid(g, [&](double a, double b) { return phi.value(a, b); });
  std::vector<GridFunction> vstar_phi;
  for (int i = 0; i < ell; ++i)
    vstar_phi.push_back(apply_Vstar(sol.field.fields[i], phi, g));

  GronwallResult out;
  // per-node ingredients
  std::vector<double> p2(nn);                       // <f^2, phi>
  std::vector<std::vector<double>> q1(ell, std::vector<double>(nn));
  std::vector<std::vector<double>> gq(ell * ell, std::vector<double>(nn));
  std::vector<std::vector<double>> hq(ell * ell, std::vector<double>(nn));

  for (std::size_t k = 0; k < nn; ++k) {
    const GridFunction& f = sol.snapshots[k];
    GridFunction f2 = multiply(f, f);
    p2[k] = pairing(f2, phig);
    for (int i = 0; i < ell; ++i) q1[i][k] = pairing(f2, vstar_phi[i]);

    out.max_tail_fraction = std::max(out.max_tail_fraction, spectral_tail_fraction(f));

    // u_i = V_i f (first-order action on the evolved snapshot)
    std::vector<GridFunction> u;
    if (route == GradientRoute::Spectral || tg.node(k) == 0.0) {
      GridFunction fx = spectral_derivative(f, 0);
      GridFunction fy = g.dim == 2 ? spectral_derivative(f, 1) : GridFunction{};
      for (int i = 0; i < ell; ++i)
        u.push_back(dot_with_field(sol.field.fields[i], g, fx,
                                   g.dim == 2 ? &fy : nullptr));
    } else {
      // variational route: grad f_t = J^T grad f_0 at the feet
      const double horizon = sol.path.grid().horizon();
      const int steps = std::max(
          1, static_cast<int>(std::llround(sol.substeps * tg.node(k) / horizon)));
      auto fj = characteristics_solve_with_jacobian(sol.field, sol.path,
                                                    tg.node(k), g, steps);
      const int d = g.dim;
      GridFunction gx = GridFunction::zeros(g), gy = GridFunction::zeros(g);
      for (std::size_t pidx = 0; pidx < g.points(); ++pidx) {
        const Vec2 g0 = sol.datum.grad(fj.feet.y1[pidx],
                                       d == 2 ? fj.feet.y2[pidx] : 0.0);
        const double* J = &fj.jac[pidx * d * d];
        if (d == 1) {
          gx.values[pidx] = J[0] * g0.x;
        } else {
          gx.values[pidx] = J[0] * g0.x + J[2] * g0.y;
          gy.values[pidx] = J[1] * g0.x + J[3] * g0.y;
        }
      }
      for (int i = 0; i < ell; ++i)
        u.push_back(dot_with_field(sol.field.fields[i], g, gx,
                                   g.dim == 2 ? &gy : nullptr));
    }

    // w_{jk} = V_k V_j f = V_k u_j, differentiated spectrally
    for (int j = 0; j < ell; ++j) {
      GridFunction ux = spectral_derivative(u[j], 0);
      GridFunction uy = g.dim == 2 ? spectral_derivative(u[j], 1) : GridFunction{};
      for (int kk = 0; kk < ell; ++kk) {
        GridFunction w = dot_with_field(sol.field.fields[kk], g, ux,
                                        g.dim == 2 ? &uy : nullptr);
        gq[j * ell + kk][k] = pairing(multiply(phig, f), w);
      }
    }
    for (int i = 0; i < ell; ++i)
      for (int j = 0; j < ell; ++j)
        hq[i * ell + j][k] = pairing(multiply(phig, u[i]), u[j]);
  }
  out.resolution_warning = out.max_tail_fraction > 1e-8;

  std::vector<double> table(tsize, 0.0);
  for (std::size_t j = 1; j < nn; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const Eigen::VectorXd x = sol.path.increment(tg.node(i), tg.node(j));
      const Eigen::MatrixXd xx = sol.path.iterated(tg.node(i), tg.node(j));
      double resid = p2[j] - p2[i];
      for (int a = 0; a < ell; ++a) resid -= x[a] * q1[a][i];
      // Q2 = 2 XX^{jk} <phi f, V_k V_j f> + X^a X^b <phi V_a f, V_b f>
      for (int a = 0; a < ell; ++a)
        for (int b = 0; b < ell; ++b) {
          resid -= 2.0 * xx(a, b) * gq[a * ell + b][i];
          resid -= x[a] * x[b] * hq[a * ell + b][i];
        }
      table[TwoIndexMap<double>::table_index(i, j)] = resid;
    }
  out.residual = to_map(tg, std::move(table));
  out.report = try_fit(out.residual, m_min, m_max, floor);
  return out;
}

}  // namespace rd
