#pragma once

#include <cstdint>

#include "roughdrive/roughpath/base_path.hpp"

namespace rd {

// Piecewise-linear Brownian sample: M independent N(0, T/M) increments per
// component from a GaussianRng (mt19937_64 + Box-Muller). Draw order is
// step-major, component-minor; the same seed gives a bit-identical path.
BasePath sample_brownian_pl(std::uint64_t seed, double horizon, std::size_t m,
                            int ell);

}  // namespace rd
