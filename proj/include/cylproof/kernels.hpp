#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

// Dense int64 kernels for truncated series arithmetic. Every kernel has a
// scalar reference version; vector versions are selected at runtime and must
// produce identical results. Callers guarantee that no intermediate overflows.
namespace cylproof::kernels {

enum class Backend { kScalar, kAvx2 };

const char* backend_name(Backend b);
bool avx2_supported();
// Backend used by the dispatching entry points.
Backend active_backend();
// Pins the backend (tests and benchmarks); nullopt restores runtime detection.
// Requesting an unsupported backend falls back to scalar.
void force_backend(std::optional<Backend> b);

// Largest magnitude accepted by the vector multiply paths (operands must fit in int32).
constexpr std::int64_t kSmallLimit = (std::int64_t{1} << 31) - 1;

// out[i] += a * x[i] for i < n.
void axpy(std::int64_t a, const std::int64_t* x, std::int64_t* out, std::size_t n);
// out[k] += sum_{i+j=k} a[i] b[j] for k < n_out.
void convolve_add(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb,
                  std::int64_t* out, std::size_t n_out);

namespace scalar {
void axpy(std::int64_t a, const std::int64_t* x, std::int64_t* out, std::size_t n);
void convolve_add(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb,
                  std::int64_t* out, std::size_t n_out);
}  // namespace scalar

namespace avx2 {
// Operands must satisfy |a|, |x[i]| <= kSmallLimit.
void axpy(std::int64_t a, const std::int64_t* x, std::int64_t* out, std::size_t n);
void convolve_add(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb,
                  std::int64_t* out, std::size_t n_out);
}  // namespace avx2

}  // namespace cylproof::kernels
