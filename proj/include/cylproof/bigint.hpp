#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cylproof {

using BigInt = mpz_class;

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline bool fits_int64(const BigInt& v) { return v.fits_slong_p(); }

inline std::int64_t to_int64(const BigInt& v) { return v.get_si(); }

inline bool divides(const BigInt& d, const BigInt& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Exact quotient; the caller guarantees that d divides n.
inline BigInt divexact(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

}  // namespace cylproof
