#pragma once

namespace rd::kernels {

// Compute backends for the data-parallel inner loops. Scalar is the
// reference implementation; Avx2 is used automatically when the CPU
// supports AVX2+FMA. Set ROUGHDRIVE_NOSIMD=1 to force the scalar path.
enum class Backend { Scalar, Avx2 };

Backend best_backend();
bool backend_available(Backend b);
const char* backend_name(Backend b);

}  // namespace rd::kernels
