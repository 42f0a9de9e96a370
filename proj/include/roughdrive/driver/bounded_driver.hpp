#pragma once

#include <functional>

#include <Eigen/Dense>

#include "roughdrive/core/multi_index.hpp"
#include "roughdrive/roughpath/level2.hpp"

namespace rd {

using MatRule = std::function<Eigen::MatrixXd(double, double)>;

// Operator 2-norm estimate by 20 rounds of power iteration on A^T A, with
// a fixed deterministic start vector.
double op2norm(const Eigen::MatrixXd& a, int iters = 20);

// Bounded gamma-rough driver in the matrix algebra R^{NxN}: a pair of
// 2-index maps with delta A1 = 0 and delta A2_{tus} = A1_{tu} A1_{us}.
// The driver norm ||A|| is the sup over node pairs with t - s <= 1 of
// max(|A1_{ts}|/(t-s)^gamma, |A2_{ts}|/(t-s)^{2 gamma}), in operator
// 2-norm, computed once at construction.
class BoundedDriver {
 public:
  BoundedDriver(TimeGrid grid, MatRule a1, MatRule a2, double gamma, int n);

  // A1 = sum_i X^i V_i and A2 = sum_jk XX^{jk} V_k V_j; the ordering makes
  // Chen's relation delta A2_{tus} = A1_{tu} A1_{us} exact for lifts with
  // XX^{jk}_{ts} = int (x^j - x^j_s) dx^k.
  static BoundedDriver from_roughpath(const Level2RoughPath& rp,
                                      std::vector<Eigen::MatrixXd> v,
                                      double gamma);

  Eigen::MatrixXd a1(double s, double t) const { return a1_(s, t); }
  Eigen::MatrixXd a2(double s, double t) const { return a2_(s, t); }
  const TimeGrid& grid() const { return grid_; }
  double gamma() const { return gamma_; }
  int size() const { return n_; }
  double norm() const { return norm_; }

  TwoIndexMap<Eigen::MatrixXd> a1_map() const {
    return TwoIndexMap<Eigen::MatrixXd>(grid_, a1_);
  }
  TwoIndexMap<Eigen::MatrixXd> a2_map() const {
    return TwoIndexMap<Eigen::MatrixXd>(grid_, a2_);
  }

  // max over node triples of |A2_{ts} - A2_{tu} - A2_{us} - A1_{tu} A1_{us}|_F
  double chen_defect(std::size_t exhaustive_cap = 48,
                     std::size_t sample_count = 4000) const;

 private:
  TimeGrid grid_;
  MatRule a1_, a2_;
  double gamma_ = 0.5;
  int n_ = 1;
  double norm_ = 0.0;
};

}  // namespace rd
