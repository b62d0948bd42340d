#pragma once

#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "cylproof/bigint.hpp"
#include "cylproof/polyqz.hpp"

namespace cylproof {

// Truncated formal power series in q (Laurent allowed) whose coefficients are
// Laurent polynomials in z. Coefficients of q^n are exact for n <= q_order().
// With a finite z_order() only z-exponents <= z_order() are exact; kExactZ
// means every z-exponent is kept.
class TruncSeries {
 public:
  static constexpr int kExactZ = std::numeric_limits<int>::max();

  TruncSeries() = default;
  explicit TruncSeries(int q_order, int z_order = kExactZ);

  static TruncSeries from_poly(const PolyQZ& p, int q_order, int z_order = kExactZ);
  static TruncSeries one(int q_order) { return from_poly(PolyQZ(1), q_order); }

  int q_order() const { return q_order_; }
  int z_order() const { return z_order_; }
  bool z_exact() const { return z_order_ == kExactZ; }

  BigInt coefficient(int qexp, int zexp = 0) const;
  // Adds c q^qexp z^zexp; terms beyond the valid orders are dropped.
  void add_term(int qexp, int zexp, const BigInt& c);

  bool is_zero() const;
  // Lowest q-exponent with a nonzero coefficient; q_order() + 1 for zero.
  int min_q() const;

  TruncSeries operator-() const;
  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const PolyQZ& p, const TruncSeries& s);
  // Same valid orders and same coefficients.
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  // Lowers the valid orders; throws std::invalid_argument when asked to raise them.
  TruncSeries truncated(int q_order, int z_order = kExactZ) const;
  // Substitutes z -> 1; requires exact z.
  TruncSeries at_z_one() const;
  // Substitutes z -> z q^n.
  TruncSeries z_shift(int n) const;
  // Nonzero terms as (q, z, coefficient), sorted by q then z.
  std::vector<std::tuple<int, int, BigInt>> terms() const;
  PolyQZ to_poly() const;
  // Canonical sparse rendering: terms sorted by q then z with explicit signs,
  // followed by the truncation marker.
  std::string to_string() const;

 private:
  int q_order_ = -1;
  int z_order_ = kExactZ;
  // Nonzero coefficients by exponent.
  std::vector<PolyQZ::Term> terms_;

  void set_terms(std::vector<PolyQZ::Term> terms);
  friend TruncSeries inverse(const TruncSeries& s);
};

// True when a and b have equal coefficients for q-exponents <= q_order and
// z-exponents <= z_order. Throws std::invalid_argument if either series is not
// valid that far.
bool agree(const TruncSeries& a, const TruncSeries& b, int q_order, int z_order = TruncSeries::kExactZ);
// First (q, z) where a and b differ up to the given orders, as a description; empty if none.
std::string first_difference(const TruncSeries& a, const TruncSeries& b, int q_order,
                             int z_order = TruncSeries::kExactZ);

// Multiplicative inverse of a series whose lowest q-coefficient is +-z^0 q^v.
TruncSeries inverse(const TruncSeries& s);

}  // namespace cylproof
