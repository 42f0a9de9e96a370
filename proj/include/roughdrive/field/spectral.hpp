#pragma once

#include <complex>
#include <vector>

#include "roughdrive/field/torus_grid.hpp"

namespace rd {

// Discrete Fourier layer for the torus spaces. Spectra use the FFTW
// row-major layout with frequencies kappa_k = k for k <= n/2 and k - n
// otherwise; the forward transform is normalized by 1/N so coefficients
// are the trigonometric-polynomial amplitudes.
std::vector<std::complex<double>> dft_forward(const GridFunction& f);
GridFunction dft_inverse(const TorusGrid& g,
                         const std::vector<std::complex<double>>& spec);

// Duality pairing by uniform-grid quadrature: sum f * phi * (2pi/n)^d.
// Exact for trigonometric polynomials resolved below the Nyquist mode.
double pairing(const GridFunction& f, const GridFunction& phi);

// Spectral Sobolev norm (sum_kappa (1+|kappa|^2)^k |f_hat|^2)^{1/2},
// scaled so k = 0 matches the L^2 quadrature norm; k in [-3, 3].
double sobolev_norm(const GridFunction& f, int k);

// Smoothing operator (I - eps Laplacian)^{-j0}: Fourier multiplier
// (1 + eps |kappa|^2)^{-j0}; eps in (0, 1], j0 >= 1.
GridFunction smoothing(const GridFunction& f, double eps, int j0);

// Mode-wise i*kappa derivative along an axis (0-based); the Nyquist mode
// is zeroed. Callers should check spectral_tail_fraction when the input
// arises from evolution rather than an analytic closure.
GridFunction spectral_derivative(const GridFunction& f, int axis);

// Fraction of spectral energy carried by the outermost frequency band;
// above ~1e-8 the function is considered under-resolved.
double spectral_tail_fraction(const GridFunction& f);

double l2_norm(const GridFunction& f);   // quadrature L^2 norm
double max_abs(const GridFunction& f);   // grid sup norm

// Measured constants of the two smoothing estimates over a dyadic eps
// sweep and a single-mode dictionary. (I - eps Laplacian)^{-j0} smooths at
// the length scale sqrt(eps), so the sharp uniform exponents on the
// W^{n,2} ladder are
//   || J^eps f - f ||_n      <= c1 eps^{min(k,2)/2} || f ||_{n+k}
//   || J^eps f ||_{n+k}      <= c2 eps^{-k/2}       || f ||_n
// with c1, c2 independent of eps; the sweep returns the worst measured
// constants together with the per-combination table.
struct SmoothingSweep {
  struct Row {
    int n = 0, k = 0;
    double eps = 0.0;
    double c_approx = 0.0;  // first estimate
    double c_bound = 0.0;   // second estimate
  };
  std::vector<Row> rows;
  double worst_c_approx = 0.0;
  double worst_c_bound = 0.0;
};

SmoothingSweep smoothing_estimate_sweep(const TorusGrid& g, int j0,
                                        int eps_pow_min, int eps_pow_max,
                                        int dictionary_modes);

}  // namespace rd
