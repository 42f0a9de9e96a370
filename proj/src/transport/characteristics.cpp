#include "roughdrive/transport/characteristics.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "roughdrive/kernels/reduce.hpp"

namespace rd {

namespace {

constexpr double kPi = std::numbers::pi;

struct StepPlan {
  std::vector<kernels::StepCoefs> coefs;  // per substep
  double sup_step = 0.0;                  // conservative bound on |dy| per step
};

// Rough increments of the negated reversed lift over each substep. The
// characteristic ODE dy = -V(y) dX on [0, t], solved from the terminal
// time down, is the forward equation dz = V(z) dW for W_u = x_t - x_{t-u},
// whose level-2 increments coincide with those of the reversed lift.
StepPlan build_plan(const VectorFieldSet& V, const Level2RoughPath& rev,
                    int substeps) {
  const int ell = V.ell();
  const double t = rev.grid().horizon();
  StepPlan plan;
  plan.coefs.resize(static_cast<std::size_t>(substeps));
  double sup_v = 1.0, sup_vgv = 1.0;  // |sin| <= 1; const kernels carry params
  if (V.kernel == kernels::FieldKernelId::Const1D ||
      V.kernel == kernels::FieldKernelId::Const2D) {
    sup_v = std::hypot(V.kernel_params.p[0], V.kernel_params.p[1]);
    sup_vgv = 0.0;
  }
  for (int k = 0; k < substeps; ++k) {
    const double a = t * static_cast<double>(k) / substeps;
    const double b = t * static_cast<double>(k + 1) / substeps;
    kernels::StepCoefs c;
    c.ell = ell;
    const Eigen::VectorXd x = rev.increment(a, b);
    const Eigen::MatrixXd xx = rev.iterated(a, b);
    double linear = 0.0, quad = 0.0;
    for (int i = 0; i < ell; ++i) {
      c.x[static_cast<std::size_t>(i)] = -x[i];
      linear += std::fabs(x[i]);
      for (int j = 0; j < ell; ++j) {
        c.xx[static_cast<std::size_t>(i) * ell + j] = xx(i, j);
        quad += std::fabs(xx(i, j));
      }
    }
    plan.sup_step = std::max(plan.sup_step, linear * sup_v + quad * sup_vgv);
    plan.coefs[static_cast<std::size_t>(k)] = c;
  }
  return plan;
}

void generic_step(const VectorFieldSet& V, std::span<double> y1,
                  std::span<double> y2, const kernels::StepCoefs& c) {
  const int ell = V.ell();
  const bool two_d = V.dim == 2;
  for (std::size_t p = 0; p < y1.size(); ++p) {
    const double a = y1[p];
    const double b = two_d ? y2[p] : 0.0;
    double d1 = 0.0, d2 = 0.0;
    // cache values and jacobians of all fields at this point
    double val[4][2], jac[4][4];
    for (int i = 0; i < ell; ++i) {
      const Vec2 v = V.fields[static_cast<std::size_t>(i)].value(a, b);
      val[i][0] = v.x;
      val[i][1] = v.y;
      V.fields[static_cast<std::size_t>(i)].jacobian(a, b, jac[i]);
    }
    for (int i = 0; i < ell; ++i) {
      d1 += val[i][0] * c.x[static_cast<std::size_t>(i)];
      d2 += val[i][1] * c.x[static_cast<std::size_t>(i)];
    }
    // second-order term ((v_j . grad) v_k) XX^{jk}
    for (int j = 0; j < ell; ++j)
      for (int k = 0; k < ell; ++k) {
        const double w = c.xx[static_cast<std::size_t>(j) * ell + k];
        if (w == 0.0) continue;
        d1 += w * (jac[k][0] * val[j][0] + jac[k][1] * val[j][1]);
        d2 += w * (jac[k][2] * val[j][0] + jac[k][3] * val[j][1]);
      }
    if (std::fabs(d1) > kPi || std::fabs(d2) > kPi)
      throw StepSizeError("characteristics: step left the trust region");
    y1[p] = a + d1;
    if (two_d) y2[p] = b + d2;
  }
  kernels::wrap_2pi(y1, kernels::Backend::Scalar);
  if (two_d) kernels::wrap_2pi(y2, kernels::Backend::Scalar);
}

template <class StepFn>
void run_blocks(std::size_t npoints, int threads, StepFn&& block_fn) {
  if (threads <= 1) {
    block_fn(0, npoints);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (npoints + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const std::size_t lo = std::min(npoints, w * chunk);
    const std::size_t hi = std::min(npoints, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] { block_fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

int thread_count() {
  if (const char* env = std::getenv("ROUGHDRIVE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

CharacteristicFeet characteristics_solve(const VectorFieldSet& V,
                                         const Level2RoughPath& rp, double t,
                                         const TorusGrid& g, int substeps,
                                         kernels::Backend backend) {
  if (V.dim != g.dim) throw Error("characteristics: field/grid dimension mismatch");
  if (V.ell() != rp.dim())
    throw Error("characteristics: field count must match the path dimension");
  if (V.regularity == FieldRegularity::C1b)
    throw Error("characteristics: fields must be at least C2_b");
  if (substeps < 1) throw Error("characteristics: at least one substep");

  CharacteristicFeet out;
  out.grid = g;
  out.substeps_used = substeps;
  const std::size_t np = g.points();
  out.y1.resize(np);
  if (g.dim == 2) out.y2.resize(np);
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i) out.y1[static_cast<std::size_t>(i)] = g.coord(i);
  } else {
    std::size_t idx = 0;
    for (int i1 = 0; i1 < g.n; ++i1)
      for (int i2 = 0; i2 < g.n; ++i2) {
        out.y1[idx] = g.coord(i1);
        out.y2[idx] = g.coord(i2);
        ++idx;
      }
  }
  if (t == 0.0) return out;

  const Level2RoughPath rev = reverse(rp, t);
  const StepPlan plan = build_plan(V, rev, substeps);
  if (plan.sup_step > kPi)
    throw StepSizeError("characteristics: increments exceed half the domain");

  const bool use_kernel = kernels::has_step_kernel(V.kernel);
  run_blocks(np, thread_count(), [&](std::size_t lo, std::size_t hi) {
    std::span<double> b1(out.y1.data() + lo, hi - lo);
    std::span<double> b2 =
        g.dim == 2 ? std::span<double>(out.y2.data() + lo, hi - lo)
                   : std::span<double>();
    for (const auto& c : plan.coefs) {
      if (use_kernel)
        kernels::step_points(V.kernel, V.kernel_params, b1, b2, c, backend);
      else
        generic_step(V, b1, b2, c);
    }
  });
  return out;
}

CharacteristicFeetJacobian characteristics_solve_with_jacobian(
    const VectorFieldSet& V, const Level2RoughPath& rp, double t,
    const TorusGrid& g, int substeps) {
  if (V.regularity == FieldRegularity::C1b)
    throw Error("characteristics: jacobian transport needs C2_b fields");
  CharacteristicFeetJacobian out;
  out.feet = characteristics_solve(V, rp, 0.0, g, 1);  // layout + t=0 identity
  out.feet.substeps_used = substeps;
  const std::size_t np = g.points();
  const int d = g.dim;
  out.jac.assign(np * d * d, 0.0);
  for (std::size_t p = 0; p < np; ++p)
    for (int i = 0; i < d; ++i) out.jac[p * d * d + i * d + i] = 1.0;
  if (t == 0.0) return out;

  const Level2RoughPath rev = reverse(rp, t);
  const StepPlan plan = build_plan(V, rev, substeps);
  const int ell = V.ell();

  for (std::size_t p = 0; p < np; ++p) {
    double a = out.feet.y1[p];
    double b = d == 2 ? out.feet.y2[p] : 0.0;
    double J[4] = {1.0, 0.0, 0.0, 1.0};
    for (const auto& c : plan.coefs) {
      double val[4][2], jac[4][4], sec[4][8];
      for (int i = 0; i < ell; ++i) {
        const auto& f = V.fields[static_cast<std::size_t>(i)];
        const Vec2 v = f.value(a, b);
        val[i][0] = v.x;
        val[i][1] = v.y;
        f.jacobian(a, b, jac[i]);
        f.second(a, b, sec[i]);
      }
      // point update and its derivative DPhi
      double d1 = 0.0, d2 = 0.0;
      double D[4] = {0.0, 0.0, 0.0, 0.0};
      for (int i = 0; i < ell; ++i) {
        const double w = c.x[static_cast<std::size_t>(i)];
        d1 += val[i][0] * w;
        d2 += val[i][1] * w;
        for (int q = 0; q < 4; ++q) D[q] += w * jac[i][q];
      }
      for (int j = 0; j < ell; ++j)
        for (int k = 0; k < ell; ++k) {
          const double w = c.xx[static_cast<std::size_t>(j) * ell + k];
          if (w == 0.0) continue;
          d1 += w * (jac[k][0] * val[j][0] + jac[k][1] * val[j][1]);
          d2 += w * (jac[k][2] * val[j][0] + jac[k][3] * val[j][1]);
          // D[(v_j.grad)v_k]_{ab} = sum_c (d_b d_c v_k^a) v_j^c
          //                         + (d_c v_k^a)(d_b v_j^c)
          for (int ai = 0; ai < 2; ++ai)
            for (int bi = 0; bi < 2; ++bi) {
              double acc = 0.0;
              for (int ci = 0; ci < 2; ++ci)
                acc += sec[k][(ai * 2 + bi) * 2 + ci] * val[j][ci] +
                       jac[k][ai * 2 + ci] * jac[j][ci * 2 + bi];
              D[ai * 2 + bi] += w * acc;
            }
        }
      // J <- (I + D) J
      const double j0 = J[0], j1 = J[1], j2 = J[2], j3 = J[3];
      J[0] = j0 + D[0] * j0 + D[1] * j2;
      J[1] = j1 + D[0] * j1 + D[1] * j3;
      J[2] = j2 + D[2] * j0 + D[3] * j2;
      J[3] = j3 + D[2] * j1 + D[3] * j3;
      a += d1;
      b += d2;
      const double two_pi = 2.0 * kPi;
      a -= two_pi * std::floor(a / two_pi);
      b -= two_pi * std::floor(b / two_pi);
    }
    out.feet.y1[p] = a;
    if (d == 2) out.feet.y2[p] = b;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out.jac[p * d * d + i * d + j] = J[i * 2 + j];
  }
  return out;
}

}  // namespace rd
