#include "roughdrive/kernels/dispatch.hpp"

#include <cstdlib>

namespace rd::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend probe() {
  if (const char* env = std::getenv("ROUGHDRIVE_NOSIMD"); env && env[0] == '1')
    return Backend::Scalar;
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

}  // namespace

Backend best_backend() {
  static const Backend b = probe();
  return b;
}

bool backend_available(Backend b) {
  return b == Backend::Scalar || cpu_has_avx2();
}

const char* backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

}  // namespace rd::kernels
