#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cylproof/bigint.hpp"

namespace cylproof {

// Dense univariate series coefficients c[0..n) with an int64 representation
// when every coefficient fits and a BigInt representation otherwise. Products
// use the int64 kernels only when an a-priori bound rules out overflow.
class DenseSeries {
 public:
  DenseSeries() = default;
  static DenseSeries from_small(std::vector<std::int64_t> c);
  static DenseSeries from_big(std::vector<BigInt> c);

  std::size_t size() const { return small_ ? s_.size() : b_.size(); }
  bool is_small() const { return small_; }
  BigInt at(std::size_t i) const;
  const std::vector<std::int64_t>& small_coeffs() const { return s_; }
  const std::vector<BigInt>& big_coeffs() const { return b_; }

  DenseSeries truncated(std::size_t n) const;
  // acc[offset + i] += c[i] for every i with offset + i < acc.size().
  void add_into(std::vector<BigInt>& acc, std::size_t offset) const;

 private:
  bool small_ = true;
  std::int64_t max_abs_ = 0;
  std::vector<std::int64_t> s_;
  std::vector<BigInt> b_;

  friend DenseSeries mul_trunc(const DenseSeries& a, const DenseSeries& b, std::size_t n);
};

// The first n coefficients of a * b.
DenseSeries mul_trunc(const DenseSeries& a, const DenseSeries& b, std::size_t n);

}  // namespace cylproof
