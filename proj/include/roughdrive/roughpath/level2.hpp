#pragma once

#include <functional>

#include "roughdrive/core/multi_index.hpp"
#include "roughdrive/roughpath/base_path.hpp"

namespace rd {

// Level-2 rough path over R^ell: increments X_{ts} = x_t - x_s and
// iterated integrals XX^{jk}_{ts} = int_s^t (x^j_r - x^j_s) dx^k_r,
// computed in closed form per linear segment of the base path. Chen's
// relation delta XX^{jk}_{tus} = X^j_{us} X^k_{tu} holds exactly, and the
// lift is weak geometric: Sym XX_{ts} = X_{ts} X_{ts}^T / 2.
//
// Storage is O(M): per-node prefix values XX_{t_k, 0} plus segment slopes;
// arbitrary (s, t) evaluations combine prefixes through Chen's relation.
class Level2RoughPath {
 public:
  Level2RoughPath() = default;

  static Level2RoughPath lift_piecewise_linear(BasePath p,
                                               double gamma_nominal = 1.0);

  int dim() const { return base_.dim(); }
  const TimeGrid& grid() const { return base_.grid; }
  double gamma_nominal() const { return gamma_; }
  const BasePath& base() const { return base_; }

  Eigen::VectorXd base_at(double t) const { return base_.at_time(t); }
  Eigen::VectorXd increment(double s, double t) const;
  Eigen::MatrixXd iterated(double s, double t) const;

  TwoIndexMap<Eigen::VectorXd> increment_map() const;
  TwoIndexMap<Eigen::MatrixXd> iterated_map() const;

 private:
  Eigen::MatrixXd prefix_at(double t) const;  // XX_{t, 0}

  BasePath base_;
  double gamma_ = 1.0;
  std::vector<Eigen::VectorXd> slopes_;    // per segment
  std::vector<Eigen::MatrixXd> prefixes_;  // XX_{t_k, 0} per node
};

// Max over node triples of || delta XX_{tus} - X_{us} (x) X_{tu} ||_F,
// exhaustive for grids with at most `exhaustive_cap` intervals, otherwise
// over `sample_count` deterministically seeded triples.
double chen_defect(const Level2RoughPath& rp, std::size_t exhaustive_cap = 64,
                   std::size_t sample_count = 10000);

// Same defect for externally supplied increment / iterated evaluators
// (used to probe perturbed or modified second levels).
double chen_defect_tables(
    const TimeGrid& grid,
    const std::function<Eigen::VectorXd(double, double)>& X,
    const std::function<Eigen::MatrixXd(double, double)>& XX,
    std::size_t exhaustive_cap = 64, std::size_t sample_count = 10000);

// Max over node pairs of || Sym XX_{ts} - X_{ts} X_{ts}^T / 2 ||_F.
double geometricity_defect(const Level2RoughPath& rp,
                           std::size_t exhaustive_cap = 512,
                           std::size_t sample_count = 20000);
double geometricity_defect_tables(
    const TimeGrid& grid,
    const std::function<Eigen::VectorXd(double, double)>& X,
    const std::function<Eigen::MatrixXd(double, double)>& XX,
    std::size_t exhaustive_cap = 512, std::size_t sample_count = 20000);

// Lift of the time-reversed base path r -> x_{t - r} on [0, t]; t must be
// a grid node. Computed by re-lifting the reversed samples.
Level2RoughPath reverse(const Level2RoughPath& rp, double t);

}  // namespace rd
