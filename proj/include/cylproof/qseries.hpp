#pragma once

#include <vector>

#include "cylproof/bigint.hpp"
#include "cylproof/polyqz.hpp"
#include "cylproof/series.hpp"

namespace cylproof {

// Argument +-q^q z^z of a Pochhammer symbol.
struct Monomial {
  int sign = 1;
  int q = 0;
  int z = 0;

  PolyQZ poly() const { return PolyQZ::monomial(sign, q, z); }
};

// (a;q^t)_L = (1 - a)(1 - a q^t)...(1 - a q^{t(L-1)}). Throws for L < 0.
PolyQZ poch_finite(const Monomial& a, int L, int t = 1);

// (a;q^t)_infinity to q-order Q. Requires t >= 1 and a q-exponent >= 1 when
// a has no z; throws std::domain_error otherwise.
TruncSeries poch_infinite(const Monomial& a, int Q, int t = 1);

// theta(q^a; q^m) = (q^a;q^m)_inf (q^{m-a};q^m)_inf to order Q (0 < a < m).
TruncSeries theta(int a, int m, int Q);
// Product of theta(q^a; q^m) over the listed exponents.
TruncSeries theta_product(const std::vector<int>& exponents, int m, int Q);

// 1/(q;q)_n to order Q.
TruncSeries reciprocal_poch(int n, int Q);

// Gaussian binomial [n choose k] in the variable q^t; zero when n < 0, k < 0 or k > n.
PolyQZ qbinom(int n, int k, int t = 1);

// Coefficients of the pentagonal-number series sum (-1)^i q^{i(3i+1)/2} to order Q.
TruncSeries pentagonal_series(int Q);

// Number of partitions of n whose parts lie in the listed residue classes mod
// modulus; a residue listed twice contributes two colors of each such part.
BigInt partition_count_oracle(const std::vector<int>& residues, int modulus, int n);
// The generating series of the above for n = 0..Q, computed by one dynamic program.
TruncSeries partition_series_oracle(const std::vector<int>& residues, int modulus, int Q);

}  // namespace cylproof
