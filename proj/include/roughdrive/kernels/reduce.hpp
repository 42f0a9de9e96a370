#pragma once

#include <cstddef>
#include <span>

#include "roughdrive/kernels/dispatch.hpp"

namespace rd::kernels {

// Elementwise / reduction kernels over contiguous double arrays.
// Reduction order is fixed per backend, so results are bit-reproducible
// for a given backend choice.

double dot(std::span<const double> x, std::span<const double> y,
           Backend b = best_backend());
double sum(std::span<const double> x, Backend b = best_backend());
double max_abs(std::span<const double> x, Backend b = best_backend());

// y += a*x
void axpy(double a, std::span<const double> x, std::span<double> y,
          Backend b = best_backend());
void scale(double a, std::span<double> x, Backend b = best_backend());
// out = x*y (elementwise)
void hadamard(std::span<const double> x, std::span<const double> y,
              std::span<double> out, Backend b = best_backend());

// s[i] = sin(x[i]), c[i] = cos(x[i]); either output may be empty.
void sincos_batch(std::span<const double> x, std::span<double> s,
                  std::span<double> c, Backend b = best_backend());

// x[i] -> x[i] mod 2*pi, result in [0, 2*pi)
void wrap_2pi(std::span<double> x, Backend b = best_backend());

}  // namespace rd::kernels
