#include "roughdrive/driver/bounded_driver.hpp"

#include <cmath>
#include <random>

namespace rd {

double op2norm(const Eigen::MatrixXd& a, int iters) {
  if (a.rows() == 1 && a.cols() == 1) return std::fabs(a(0, 0));
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.cols());
  v.normalize();
  const Eigen::MatrixXd ata = a.transpose() * a;
  double lam = 0.0;
  for (int i = 0; i < iters; ++i) {
    Eigen::VectorXd w = ata * v;
    lam = w.norm();
    if (lam == 0.0) return 0.0;
    v = w / lam;
  }
  return std::sqrt(lam);
}

BoundedDriver::BoundedDriver(TimeGrid grid, MatRule a1, MatRule a2, double gamma,
                             int n)
    : grid_(std::move(grid)), a1_(std::move(a1)), a2_(std::move(a2)),
      gamma_(gamma), n_(n) {
  if (!(gamma_ > 1.0 / 3.0) || gamma_ > 1.0)
    throw Error("BoundedDriver: gamma must lie in (1/3, 1]");
  for (std::size_t j = 1; j < grid_.size(); ++j) {
    const double t = grid_.node(j);
    for (std::size_t i = 0; i < j; ++i) {
      const double dt = t - grid_.node(i);
      if (dt > 1.0) continue;
      const double s = grid_.node(i);
      norm_ = std::max(norm_, op2norm(a1_(s, t)) / std::pow(dt, gamma_));
      norm_ = std::max(norm_, op2norm(a2_(s, t)) / std::pow(dt, 2.0 * gamma_));
    }
  }
}

BoundedDriver BoundedDriver::from_roughpath(const Level2RoughPath& rp,
                                            std::vector<Eigen::MatrixXd> v,
                                            double gamma) {
  const int ell = rp.dim();
  if (static_cast<int>(v.size()) != ell)
    throw Error("from_roughpath: need one matrix per path component");
  const int n = static_cast<int>(v[0].rows());
  for (const auto& m : v)
    if (m.rows() != n || m.cols() != n)
      throw Error("from_roughpath: matrices must be square and same size");
  if (rd::chen_defect(rp, 16, 2000) > 1e-10)
    throw Error("from_roughpath: rough path fails the Chen check");

  // products[j*ell + k] = V_k V_j, contracted against XX^{jk}
  auto products = std::make_shared<std::vector<Eigen::MatrixXd>>();
  products->reserve(static_cast<std::size_t>(ell) * ell);
  for (int j = 0; j < ell; ++j)
    for (int k = 0; k < ell; ++k) products->push_back(v[k] * v[j]);
  auto mats = std::make_shared<std::vector<Eigen::MatrixXd>>(std::move(v));

  Level2RoughPath path = rp;
  MatRule a1 = [path, mats, n, ell](double s, double t) {
    const Eigen::VectorXd x = path.increment(s, t);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < ell; ++i) out += x[i] * (*mats)[i];
    return out;
  };
  MatRule a2 = [path, products, n, ell](double s, double t) {
    const Eigen::MatrixXd xx = path.iterated(s, t);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < ell; ++j)
      for (int k = 0; k < ell; ++k)
        out += xx(j, k) * (*products)[static_cast<std::size_t>(j) * ell + k];
    return out;
  };
  return BoundedDriver(rp.grid(), std::move(a1), std::move(a2), gamma, n);
}

double BoundedDriver::chen_defect(std::size_t exhaustive_cap,
                                  std::size_t sample_count) const {
  double worst = 0.0;
  auto probe = [&](std::size_t i, std::size_t j, std::size_t k) {
    const double s = grid_.node(i), u = grid_.node(j), t = grid_.node(k);
    const Eigen::MatrixXd d =
        a2_(s, t) - a2_(u, t) - a2_(s, u) - a1_(u, t) * a1_(s, u);
    worst = std::max(worst, d.norm());
  };
  const std::size_t n = grid_.size();
  if (grid_.intervals() <= exhaustive_cap) {
    for (std::size_t i = 0; i + 2 < n; ++i)
      for (std::size_t j = i + 1; j + 1 < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) probe(i, j, k);
  } else {
    std::mt19937_64 gen(0xc2b2ae3d27d4eb4fULL);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t r = 0; r < sample_count; ++r) {
      std::size_t a = pick(gen), b = pick(gen), c = pick(gen);
      if (a > b) std::swap(a, b);
      if (b > c) std::swap(b, c);
      if (a > b) std::swap(a, b);
      if (a == b || b == c) continue;
      probe(a, b, c);
    }
  }
  return worst;
}

}  // namespace rd
