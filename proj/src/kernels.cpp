#include "cylproof/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace cylproof::kernels {

namespace {

std::atomic<int> g_forced{-1};

bool all_small(const std::int64_t* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > kSmallLimit || x[i] < -kSmallLimit) return false;
  }
  return true;
}

}  // namespace

const char* backend_name(Backend b) { return b == Backend::kAvx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(CYLPROOF_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() {
  int f = g_forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Backend>(f);
  return avx2_supported() ? Backend::kAvx2 : Backend::kScalar;
}

void force_backend(std::optional<Backend> b) {
  if (!b) {
    g_forced.store(-1);
  } else if (*b == Backend::kAvx2 && !avx2_supported()) {
    g_forced.store(static_cast<int>(Backend::kScalar));
  } else {
    g_forced.store(static_cast<int>(*b));
  }
}

namespace scalar {

void axpy(std::int64_t a, const std::int64_t* x, std::int64_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += a * x[i];
}

void convolve_add(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb,
                  std::int64_t* out, std::size_t n_out) {
  for (std::size_t i = 0; i < na && i < n_out; ++i) {
    if (a[i] == 0) continue;
    axpy(a[i], b, out + i, std::min(nb, n_out - i));
  }
}

}  // namespace scalar

#if !defined(CYLPROOF_HAVE_AVX2)
namespace avx2 {
void axpy(std::int64_t a, const std::int64_t* x, std::int64_t* out, std::size_t n) { scalar::axpy(a, x, out, n); }
void convolve_add(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb,
                  std::int64_t* out, std::size_t n_out) {
  scalar::convolve_add(a, na, b, nb, out, n_out);
}
}  // namespace avx2
#endif

void axpy(std::int64_t a, const std::int64_t* x, std::int64_t* out, std::size_t n) {
  if (active_backend() == Backend::kAvx2 && a <= kSmallLimit && a >= -kSmallLimit && all_small(x, n)) {
    avx2::axpy(a, x, out, n);
  } else {
    scalar::axpy(a, x, out, n);
  }
}

void convolve_add(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb,
                  std::int64_t* out, std::size_t n_out) {
  if (active_backend() == Backend::kAvx2 && all_small(a, na) && all_small(b, nb)) {
    avx2::convolve_add(a, na, b, nb, out, n_out);
  } else {
    scalar::convolve_add(a, na, b, nb, out, n_out);
  }
}

}  // namespace cylproof::kernels
