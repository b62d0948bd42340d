// Compiled with -mavx2; only reached after a runtime cpuid check.
#include <immintrin.h>

#include <algorithm>

#include "cylproof/kernels.hpp"

namespace cylproof::kernels::avx2 {

void axpy(std::int64_t a, const std::int64_t* x, std::int64_t* out, std::size_t n) {
  const __m256i va = _mm256_set1_epi64x(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i vo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(out + i));
    // Signed 32x32 -> 64 multiply of the low halves; operands fit in int32.
    vo = _mm256_add_epi64(vo, _mm256_mul_epi32(va, vx));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), vo);
  }
  for (; i < n; ++i) out[i] += a * x[i];
}

void convolve_add(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb,
                  std::int64_t* out, std::size_t n_out) {
  for (std::size_t i = 0; i < na && i < n_out; ++i) {
    if (a[i] == 0) continue;
    axpy(a[i], b, out + i, std::min(nb, n_out - i));
  }
}

}  // namespace cylproof::kernels::avx2
