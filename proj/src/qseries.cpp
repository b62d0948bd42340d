#include "cylproof/qseries.hpp"

#include <stdexcept>

namespace cylproof {

PolyQZ poch_finite(const Monomial& a, int L, int t) {
  if (L < 0) throw std::invalid_argument("poch_finite: negative length");
  PolyQZ r(1);
  for (int j = 0; j < L; ++j) r *= PolyQZ(1) - PolyQZ::monomial(a.sign, a.q + t * j, a.z);
  return r;
}

TruncSeries poch_infinite(const Monomial& a, int Q, int t) {
  if (t < 1) throw std::domain_error("poch_infinite: base exponent must be positive");
  if (a.q < 1 && a.z == 0) throw std::domain_error("poch_infinite: divergent argument");
  if (a.q < 0) throw std::domain_error("poch_infinite: negative q-exponent");
  TruncSeries r = TruncSeries::one(Q);
  for (int j = 0; a.q + t * j <= Q; ++j) {
    r = (PolyQZ(1) - PolyQZ::monomial(a.sign, a.q + t * j, a.z)) * r;
  }
  return r;
}

TruncSeries theta(int a, int m, int Q) {
  if (a <= 0 || a >= m) throw std::domain_error("theta: exponent must lie strictly between 0 and the modulus");
  return poch_infinite(Monomial{1, a, 0}, Q, m) * poch_infinite(Monomial{1, m - a, 0}, Q, m);
}

TruncSeries theta_product(const std::vector<int>& exponents, int m, int Q) {
  TruncSeries r = TruncSeries::one(Q);
  for (int a : exponents) r = r * theta(a, m, Q);
  return r;
}

TruncSeries reciprocal_poch(int n, int Q) {
  // 1/(1-q^j) multiplied in one factor at a time by the prefix recurrence.
  std::vector<BigInt> c(Q + 1);
  c[0] = 1;
  for (int j = 1; j <= n && j <= Q; ++j) {
    for (int i = j; i <= Q; ++i) c[i] += c[i - j];
  }
  TruncSeries r(Q);
  for (int i = 0; i <= Q; ++i) r.add_term(i, 0, c[i]);
  return r;
}

PolyQZ qbinom(int n, int k, int t) {
  if (t < 1) throw std::invalid_argument("qbinom: base exponent must be positive");
  if (n < 0 || k < 0 || k > n) return {};
  if (2 * k > n) k = n - k;
  // Dense coefficients in x = q^t; multiply by (1 - x^{n-k+j}) and divide by (1 - x^j).
  std::vector<BigInt> c{1};
  for (int j = 1; j <= k; ++j) {
    const int a = n - k + j;
    std::vector<BigInt> d(c.size() + a);
    for (std::size_t i = 0; i < c.size(); ++i) {
      d[i] += c[i];
      d[i + a] -= c[i];
    }
    // Exact division by (1 - x^j): e[i] = d[i] + e[i - j].
    for (std::size_t i = j; i < d.size(); ++i) d[i] += d[i - j];
    for (int i = 0; i < j; ++i) {
      if (d[d.size() - 1 - i] != 0) throw std::logic_error("qbinom: inexact division");
    }
    d.resize(d.size() - j);
    c = std::move(d);
  }
  std::vector<PolyQZ::Term> terms;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) terms.push_back({Exp{static_cast<int>(i) * t, 0}, c[i]});
  }
  return PolyQZ::from_terms(std::move(terms));
}

TruncSeries pentagonal_series(int Q) {
  TruncSeries r(Q);
  for (int i = 0;; ++i) {
    const int e1 = i * (3 * i + 1) / 2;
    const int e2 = i * (3 * i - 1) / 2;
    if (e1 > Q && e2 > Q) break;
    const long sign = (i % 2 == 0) ? 1 : -1;
    r.add_term(e1, 0, BigInt(sign));
    if (i != 0) r.add_term(e2, 0, BigInt(sign));
  }
  return r;
}

namespace {

std::vector<BigInt> partition_dp(const std::vector<int>& residues, int modulus, int n) {
  if (modulus <= 0) throw std::invalid_argument("partition oracle: modulus must be positive");
  std::vector<BigInt> ways(n + 1);
  ways[0] = 1;
  for (int part = 1; part <= n; ++part) {
    int colors = 0;
    for (int r : residues) {
      if (((part - r) % modulus + modulus) % modulus == 0) ++colors;
    }
    for (int c = 0; c < colors; ++c) {
      for (int s = part; s <= n; ++s) ways[s] += ways[s - part];
    }
  }
  return ways;
}

}  // namespace

BigInt partition_count_oracle(const std::vector<int>& residues, int modulus, int n) {
  if (n < 0) throw std::invalid_argument("partition_count_oracle: negative n");
  return partition_dp(residues, modulus, n)[n];
}

TruncSeries partition_series_oracle(const std::vector<int>& residues, int modulus, int Q) {
  auto ways = partition_dp(residues, modulus, Q);
  TruncSeries r(Q);
  for (int i = 0; i <= Q; ++i) r.add_term(i, 0, ways[i]);
  return r;
}

}  // namespace cylproof
