#include "cylproof/dense.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "cylproof/kernels.hpp"

namespace cylproof {

namespace {

std::int64_t max_abs_of(const std::vector<std::int64_t>& c) {
  std::int64_t m = 0;
  for (auto v : c) m = std::max(m, v < 0 ? -v : v);
  return m;
}

std::vector<BigInt> to_big(const DenseSeries& a) {
  if (!a.is_small()) return a.big_coeffs();
  std::vector<BigInt> out;
  out.reserve(a.size());
  for (auto v : a.small_coeffs()) out.emplace_back(static_cast<long>(v));
  return out;
}

}  // namespace

DenseSeries DenseSeries::from_small(std::vector<std::int64_t> c) {
  DenseSeries d;
  d.small_ = true;
  d.max_abs_ = max_abs_of(c);
  d.s_ = std::move(c);
  return d;
}

DenseSeries DenseSeries::from_big(std::vector<BigInt> c) {
  bool fits = std::all_of(c.begin(), c.end(), [](const BigInt& v) {
    return fits_int64(v) && v != BigInt(std::numeric_limits<long>::min());
  });
  if (fits) {
    std::vector<std::int64_t> s;
    s.reserve(c.size());
    for (const auto& v : c) s.push_back(to_int64(v));
    return from_small(std::move(s));
  }
  DenseSeries d;
  d.small_ = false;
  d.b_ = std::move(c);
  return d;
}

BigInt DenseSeries::at(std::size_t i) const {
  return small_ ? BigInt(static_cast<long>(s_[i])) : b_[i];
}

DenseSeries DenseSeries::truncated(std::size_t n) const {
  if (n >= size()) return *this;
  if (small_) return from_small(std::vector<std::int64_t>(s_.begin(), s_.begin() + n));
  return from_big(std::vector<BigInt>(b_.begin(), b_.begin() + n));
}

void DenseSeries::add_into(std::vector<BigInt>& acc, std::size_t offset) const {
  if (offset >= acc.size()) return;
  const std::size_t n = std::min(size(), acc.size() - offset);
  if (small_) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s_[i] != 0) acc[offset + i] += static_cast<long>(s_[i]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) acc[offset + i] += b_[i];
  }
}

DenseSeries mul_trunc(const DenseSeries& a, const DenseSeries& b, std::size_t n) {
  const std::size_t na = std::min(a.size(), n);
  const std::size_t nb = std::min(b.size(), n);
  if (na == 0 || nb == 0) return DenseSeries::from_small(std::vector<std::int64_t>(n, 0));
  if (a.small_ && b.small_) {
    const __int128 bound = static_cast<__int128>(a.max_abs_) * b.max_abs_ * static_cast<__int128>(std::min(na, nb));
    if (bound < (static_cast<__int128>(1) << 62)) {
      std::vector<std::int64_t> out(n, 0);
      kernels::convolve_add(a.s_.data(), na, b.s_.data(), nb, out.data(), n);
      return DenseSeries::from_small(std::move(out));
    }
  }
  std::vector<BigInt> A = to_big(a);
  std::vector<BigInt> B = to_big(b);
  std::vector<BigInt> out(n);
  for (std::size_t i = 0; i < na; ++i) {
    if (A[i] == 0) continue;
    const std::size_t lim = std::min(nb, n - i);
    for (std::size_t j = 0; j < lim; ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), A[i].get_mpz_t(), B[j].get_mpz_t());
    }
  }
  return DenseSeries::from_big(std::move(out));
}

}  // namespace cylproof
