#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the S-sum evaluator or the q-series module.

#include <functional>
#include <random>
#include <vector>

#include "cylproof/bigint.hpp"
#include "cylproof/polyqz.hpp"
#include "cylproof/series.hpp"
#include "cylproof/ssums.hpp"

namespace oracle {

using cylproof::BigInt;
using cylproof::PolyQZ;
using cylproof::TruncSeries;

// Dense coefficients of a univariate series shifted so that index 0 is q^lo.
struct Dense {
  long lo = 0;
  std::vector<BigInt> c;
};

// 1/(q;q)_n to order len-1 by repeated division by (1 - q^j).
inline std::vector<BigInt> recip_poch(int n, std::size_t len) {
  std::vector<BigInt> c(len);
  if (len == 0) return c;
  c[0] = 1;
  for (int j = 1; j <= n; ++j) {
    for (std::size_t i = static_cast<std::size_t>(j); i < len; ++i) c[i] += c[i - static_cast<std::size_t>(j)];
  }
  return c;
}

inline std::vector<BigInt> mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::size_t len) {
  std::vector<BigInt> out(len);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Gaussian binomial [n; k] in q^t as dense coefficients, by the product formula
// evaluated through exact polynomial division.
inline std::vector<BigInt> gauss_binomial(int n, int k, int t) {
  if (k < 0 || k > n) return {};
  // Multiply (1 - q^{t(n-i)}) for i < k, divide by (1 - q^{t(i+1)}).
  std::vector<BigInt> p{1};
  for (int i = 0; i < k; ++i) {
    const std::size_t d = static_cast<std::size_t>(t * (n - i));
    std::vector<BigInt> np(p.size() + d);
    for (std::size_t j = 0; j < p.size(); ++j) {
      np[j] += p[j];
      np[j + d] -= p[j];
    }
    p = np;
  }
  for (int i = 0; i < k; ++i) {
    const std::size_t d = static_cast<std::size_t>(t * (i + 1));
    // p / (1 - q^d): forward recurrence, then trim.
    std::vector<BigInt> quot(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) quot[j] = p[j] + (j >= d ? quot[j - d] : BigInt(0));
    quot.resize(p.size() - d);
    p = quot;
  }
  return p;
}

// S_m(rho|sigma) by direct enumeration of all r, s with entries <= bound,
// keeping z-powers <= zmax and q-powers <= Q.
inline TruncSeries s_sum(int m, const std::vector<int>& rho, const std::vector<int>& sigma, int Q, int zmax, int bound) {
  const int n = static_cast<int>(rho.size());
  const auto fam = cylproof::family_of(m);
  TruncSeries out(Q, zmax);
  std::vector<int> r(n), s(n);
  std::function<void(int)> walk_s;
  std::function<void(int)> walk_r;
  auto emit = [&]() {
    long e = 0;
    for (int i = 0; i < n; ++i) e += static_cast<long>(r[i]) * r[i] - static_cast<long>(r[i]) * s[i] + static_cast<long>(s[i]) * s[i] + rho[i] * r[i] + sigma[i] * s[i];
    const int rn = r[n - 1];
    const int sn = s[n - 1];
    if (fam == cylproof::Family::kMinusOne) e += 2L * rn * sn;
    if (e > Q) return;
    const std::size_t len = static_cast<std::size_t>(Q - e + 1);
    std::vector<BigInt> t{1};
    for (int i = 0; i + 1 < n; ++i) {
      t = mul(t, recip_poch(r[i] - r[i + 1], len), len);
      t = mul(t, recip_poch(s[i] - s[i + 1], len), len);
    }
    if (fam == cylproof::Family::kZero) {
      t = mul(t, recip_poch(rn + sn, len), len);
      t = mul(t, gauss_binomial(rn + sn, rn, 3), len);
    } else {
      t = mul(t, recip_poch(rn, len), len);
      t = mul(t, recip_poch(sn, len), len);
    }
    t = mul(t, recip_poch(rn + sn + 1, len), len);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] != 0) out.add_term(static_cast<int>(e + static_cast<long>(i)), r[0], t[i]);
    }
  };
  walk_s = [&](int i) {
    if (i == n) {
      emit();
      return;
    }
    const int hi = i == 0 ? bound : s[i - 1];
    for (int v = 0; v <= hi; ++v) {
      s[i] = v;
      walk_s(i + 1);
    }
  };
  walk_r = [&](int i) {
    if (i == n) {
      walk_s(0);
      return;
    }
    const int hi = i == 0 ? std::min(bound, zmax) : r[i - 1];
    for (int v = 0; v <= hi; ++v) {
      r[i] = v;
      walk_r(i + 1);
    }
  };
  walk_r(0);
  return out;
}

// Random Laurent polynomial with small exponents and coefficients.
inline PolyQZ random_poly(std::mt19937_64& rng, int terms = 4, int span = 3, int coeff = 5) {
  std::uniform_int_distribution<int> e(-span, span);
  std::uniform_int_distribution<int> c(-coeff, coeff);
  std::vector<PolyQZ::Term> t;
  for (int i = 0; i < terms; ++i) t.push_back({cylproof::Exp{e(rng), e(rng)}, BigInt(c(rng))});
  return PolyQZ::from_terms(std::move(t));
}

// Random polynomial with nonnegative exponents (a genuine power series prefix).
inline PolyQZ random_series_poly(std::mt19937_64& rng, int terms = 5, int qspan = 6, int zspan = 2, int coeff = 4) {
  std::uniform_int_distribution<int> eq(0, qspan);
  std::uniform_int_distribution<int> ez(0, zspan);
  std::uniform_int_distribution<int> c(-coeff, coeff);
  std::vector<PolyQZ::Term> t;
  for (int i = 0; i < terms; ++i) t.push_back({cylproof::Exp{eq(rng), ez(rng)}, BigInt(c(rng))});
  return PolyQZ::from_terms(std::move(t));
}

// 1 plus a random polynomial with positive q-exponents, hence invertible as a series.
inline PolyQZ unit_series_poly(std::mt19937_64& rng) {
  std::vector<PolyQZ::Term> t{{cylproof::Exp{0, 0}, BigInt(1)}};
  const PolyQZ tail = random_series_poly(rng);
  for (const auto& term : tail.terms()) {
    if (term.first.q > 0) t.push_back(term);
  }
  return PolyQZ::from_terms(std::move(t));
}

}  // namespace oracle
