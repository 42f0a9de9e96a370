#pragma once

#include <cstddef>

// Per-backend entry points. The _avx2 symbols exist on every platform;
// off x86 they forward to the scalar versions (and the dispatcher never
// selects them anyway).

namespace rd::kernels::detail {

double dot_scalar(const double* x, const double* y, std::size_t n);
double sum_scalar(const double* x, std::size_t n);
double max_abs_scalar(const double* x, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void scale_scalar(double a, double* x, std::size_t n);
void hadamard_scalar(const double* x, const double* y, double* out, std::size_t n);
void sincos_scalar(const double* x, double* s, double* c, std::size_t n);
void wrap2pi_scalar(double* x, std::size_t n);

double dot_avx2(const double* x, const double* y, std::size_t n);
double sum_avx2(const double* x, std::size_t n);
double max_abs_avx2(const double* x, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void scale_avx2(double a, double* x, std::size_t n);
void hadamard_avx2(const double* x, const double* y, double* out, std::size_t n);
void sincos_avx2(const double* x, double* s, double* c, std::size_t n);
void wrap2pi_avx2(double* x, std::size_t n);

}  // namespace rd::kernels::detail
