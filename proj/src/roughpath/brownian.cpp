#include "roughdrive/roughpath/brownian.hpp"

#include <cmath>

#include "roughdrive/core/rng.hpp"

namespace rd {

BasePath sample_brownian_pl(std::uint64_t seed, double horizon, std::size_t m,
                            int ell) {
  if (m < 1) throw Error("sample_brownian_pl: at least one step");
  if (ell < 1) throw Error("sample_brownian_pl: dimension >= 1");
  GaussianRng rng(seed);
  const double sd = std::sqrt(horizon / static_cast<double>(m));
  std::vector<Eigen::VectorXd> samples(m + 1);
  samples[0] = Eigen::VectorXd::Zero(ell);
  for (std::size_t k = 1; k <= m; ++k) {
    Eigen::VectorXd inc(ell);
    for (int j = 0; j < ell; ++j) inc[j] = sd * rng.normal();
    samples[k] = samples[k - 1] + inc;
  }
  return make_base_path(TimeGrid::uniform(horizon, m), std::move(samples));
}

}  // namespace rd
