#pragma once

#include <stdexcept>
#include <string>

namespace rd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid experiment configuration (schema, caps, unknown keys).
struct ConfigError : Error {
  using Error::Error;
};

// Hölder-exponent fit impossible (fewer than two usable scales).
struct EstimationError : Error {
  using Error::Error;
};

// Dyadic compensated sums failed to converge.
struct SewingDivergence : Error {
  using Error::Error;
};

// Characteristic step left the trust region (more substeps needed).
struct StepSizeError : Error {
  using Error::Error;
};

}  // namespace rd
