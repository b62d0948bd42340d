#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cylproof/bigint.hpp"

namespace cylproof {

// Exponent of a monomial q^q z^z. Ordered by q first, then z.
struct Exp {
  int q = 0;
  int z = 0;
  friend auto operator<=>(const Exp&, const Exp&) = default;
};

// Sparse Laurent polynomial in q and z with integer coefficients.
// Terms are kept sorted by exponent with no zero coefficients.
class PolyQZ {
 public:
  using Term = std::pair<Exp, BigInt>;

  PolyQZ() = default;
  PolyQZ(long c);  // NOLINT: integers promote to constants
  explicit PolyQZ(const BigInt& c);

  static PolyQZ monomial(const BigInt& c, int qexp, int zexp = 0);
  static PolyQZ q_power(int e) { return monomial(1, e, 0); }
  // Builds from arbitrary (possibly repeated, possibly zero) terms.
  static PolyQZ from_terms(std::vector<Term> terms);
  // Parses the rendering produced by to_string(). Throws std::invalid_argument.
  static PolyQZ parse(std::string_view text);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_monomial() const { return terms_.size() == 1; }
  // A unit of the Laurent ring: +-q^a z^b.
  bool is_unit() const;
  bool is_one() const;

  BigInt coefficient(int qexp, int zexp = 0) const;
  // Bounds of the exponent box; undefined for the zero polynomial.
  int min_q() const;
  int max_q() const;
  int min_z() const;
  int max_z() const;
  // Sum of the q- and z-degree spans; 0 for monomials.
  int total_degree_span() const;
  BigInt max_abs_coefficient() const;

  PolyQZ operator-() const;
  PolyQZ& operator+=(const PolyQZ& o);
  PolyQZ& operator-=(const PolyQZ& o);
  PolyQZ& operator*=(const PolyQZ& o);
  friend PolyQZ operator+(PolyQZ a, const PolyQZ& b) { return a += b; }
  friend PolyQZ operator-(PolyQZ a, const PolyQZ& b) { return a -= b; }
  friend PolyQZ operator*(const PolyQZ& a, const PolyQZ& b);
  friend bool operator==(const PolyQZ& a, const PolyQZ& b) { return a.terms_ == b.terms_; }

  // Multiplies by c q^qexp z^zexp.
  PolyQZ times_monomial(const BigInt& c, int qexp, int zexp) const;
  PolyQZ shifted(int qexp, int zexp) const { return times_monomial(1, qexp, zexp); }
  // Substitutes z -> z q^n.
  PolyQZ z_shift(int n) const;
  // Substitutes z -> value (an integer), giving a polynomial in q alone.
  PolyQZ at_z(long value) const;

  // Positive gcd of the coefficients (0 for the zero polynomial).
  BigInt integer_content() const;
  // Lowest q and z exponents as a monomial q^a z^b.
  Exp low_corner() const;
  // Divides every coefficient by d; d must divide each of them.
  PolyQZ divexact_integer(const BigInt& d) const;
  // Removes integer content, monomial content and sign so the lowest term is
  // positive and the exponent box starts at (0, 0).
  PolyQZ normalized() const;

  // Renders as e.g. "1 - q*z + 2*q^2*z^-1"; "0" for zero.
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
  void add_scaled(const PolyQZ& o, int sign);
};

// Exact quotient a / b in the Laurent ring, or nullopt when b does not divide a.
std::optional<PolyQZ> try_divide(const PolyQZ& a, const PolyQZ& b);
// Exact quotient; throws std::domain_error when the division is not exact.
PolyQZ divexact(const PolyQZ& a, const PolyQZ& b);
// Greatest common divisor, normalized (positive lowest coefficient, exponent box at the origin).
// gcd(0, 0) = 0.
PolyQZ gcd(const PolyQZ& a, const PolyQZ& b);

}  // namespace cylproof
