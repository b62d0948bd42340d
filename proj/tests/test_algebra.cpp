#include <doctest.h>

#include <random>

#include "cylproof/dense.hpp"
#include "cylproof/kernels.hpp"
#include "cylproof/polyqz.hpp"
#include "cylproof/series.hpp"
#include "oracles.hpp"

using namespace cylproof;

TEST_SUITE("polyqz") {

TEST_CASE("ring axioms on random Laurent polynomials") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const PolyQZ a = oracle::random_poly(rng);
    const PolyQZ b = oracle::random_poly(rng);
    const PolyQZ c = oracle::random_poly(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == PolyQZ());
    CHECK(a * PolyQZ(1) == a);
    CHECK((a * PolyQZ()).is_zero());
  }
}

TEST_CASE("exact division and gcd") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 60; ++trial) {
    const PolyQZ a = oracle::random_poly(rng, 3, 2, 3);
    const PolyQZ b = oracle::random_poly(rng, 3, 2, 3);
    const PolyQZ g = oracle::random_poly(rng, 2, 2, 3);
    if (a.is_zero() || b.is_zero() || g.is_zero()) continue;
    const auto q = try_divide(a * b, b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
    const PolyQZ d = gcd(a * g, b * g);
    CHECK(try_divide(a * g, d).has_value());
    CHECK(try_divide(b * g, d).has_value());
    CHECK(try_divide(d, g.normalized()).has_value());
  }
}

TEST_CASE("non-divisible quotient is reported") {
  const PolyQZ a = PolyQZ(1) + PolyQZ::q_power(1);
  const PolyQZ b = PolyQZ(1) - PolyQZ::q_power(1);
  CHECK_FALSE(try_divide(a, b).has_value());
  CHECK_THROWS_AS(divexact(a, b), std::domain_error);
}

TEST_CASE("small products and quotients") {
  CHECK(PolyQZ::parse("1 - q") * PolyQZ::parse("1 + q") == PolyQZ::parse("1 - q^2"));
  const PolyQZ p = PolyQZ::parse("3 - q*z^2");
  CHECK((p + (-p)).is_zero());
  CHECK(PolyQZ::parse("1 - q*z") * PolyQZ::parse("1 - q^2*z") == PolyQZ::parse("1 - q*z - q^2*z + q^3*z^2"));
  CHECK(divexact(PolyQZ::parse("1 - q^2"), PolyQZ::parse("1 - q")) == PolyQZ::parse("1 + q"));
  CHECK(divexact(p, p) == PolyQZ(1));
  CHECK(divexact(PolyQZ::parse("q^2*z - q^3*z^2"), PolyQZ::parse("q*z")) == PolyQZ::parse("q - q^2*z"));
}

TEST_CASE("content and primitive part") {
  std::mt19937_64 rng(212);
  for (int trial = 0; trial < 100; ++trial) {
    const PolyQZ p = oracle::random_poly(rng, 4, 3, 9);
    if (p.is_zero()) continue;
    const PolyQZ prim = p.normalized();
    const Exp lo = p.low_corner();
    const PolyQZ content = PolyQZ::monomial(p.integer_content(), lo.q, lo.z);
    CHECK((content * prim == p || content * prim == -p));
    CHECK(prim.integer_content() == 1);
    CHECK(prim.low_corner() == Exp{0, 0});
  }
}

TEST_CASE("units, z-shift and parsing") {
  CHECK(PolyQZ::monomial(-1, 3, -2).is_unit());
  CHECK_FALSE(PolyQZ::monomial(2, 0, 0).is_unit());
  const PolyQZ p = PolyQZ::parse("1 - q*z + 2*q^2*z^-1");
  CHECK(p.to_string() == "1 - q*z + 2*q^2*z^-1");
  // z -> z q^2 sends q z to q^3 z.
  CHECK(p.z_shift(2) == PolyQZ::parse("1 - q^3*z + 2*z^-1"));
  CHECK(p.z_shift(2).z_shift(-2) == p);
  CHECK(p.at_z(1) == PolyQZ::parse("1 - q + 2*q^2"));
}

}  // TEST_SUITE

TEST_SUITE("series") {

TEST_CASE("truncation stability of products") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = TruncSeries::from_poly(oracle::random_series_poly(rng), 12);
    const auto b = TruncSeries::from_poly(oracle::random_series_poly(rng), 12);
    for (int k : {0, 3, 7, 12}) {
      CHECK(agree(a * b, a.truncated(k) * b.truncated(k), k));
    }
  }
}

TEST_CASE("inverse of a unit series") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    const PolyQZ p = oracle::unit_series_poly(rng);
    const auto s = TruncSeries::from_poly(p, 15);
    CHECK(s * inverse(s) == TruncSeries::one(15));
  }
}

TEST_CASE("inversion is an involution") {
  std::mt19937_64 rng(405);
  for (int trial = 0; trial < 30; ++trial) {
    const PolyQZ p = oracle::unit_series_poly(rng);
    const auto s = TruncSeries::from_poly(p, 14);
    CHECK(inverse(inverse(s)) == s);
  }
}

TEST_CASE("z-shift on series matches the polynomial substitution") {
  const PolyQZ p = PolyQZ::parse("1 + q*z - 3*q^2*z^2");
  const auto s = TruncSeries::from_poly(p, 10);
  CHECK(s.z_shift(1) == TruncSeries::from_poly(p.z_shift(1), 10));
}

TEST_CASE("orders beyond the valid range are rejected") {
  const auto s = TruncSeries::one(5);
  CHECK_THROWS_AS(s.truncated(6), std::invalid_argument);
  CHECK_THROWS_AS(agree(s, s, 6), std::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("kernels") {

TEST_CASE("vector kernels agree with the scalar reference") {
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<std::int64_t> v(-1000000, 1000000);
  for (std::size_t na : {1u, 3u, 7u, 16u, 33u}) {
    for (std::size_t nb : {1u, 4u, 9u, 31u}) {
      std::vector<std::int64_t> a(na), b(nb);
      for (auto& x : a) x = v(rng);
      for (auto& x : b) x = v(rng);
      const std::size_t n_out = na + nb;
      std::vector<std::int64_t> ref(n_out, 0), got(n_out, 0);
      kernels::scalar::convolve_add(a.data(), na, b.data(), nb, ref.data(), n_out);
      kernels::convolve_add(a.data(), na, b.data(), nb, got.data(), n_out);
      CHECK(ref == got);
      std::vector<std::int64_t> r2(nb, 7), g2(nb, 7);
      kernels::scalar::axpy(a[0], b.data(), r2.data(), nb);
      kernels::axpy(a[0], b.data(), g2.data(), nb);
      CHECK(r2 == g2);
    }
  }
  if (kernels::avx2_supported()) {
    std::vector<std::int64_t> a(40), b(40);
    for (auto& x : a) x = v(rng);
    for (auto& x : b) x = v(rng);
    std::vector<std::int64_t> ref(80, 0), got(80, 0);
    kernels::scalar::convolve_add(a.data(), 40, b.data(), 40, ref.data(), 80);
    kernels::avx2::convolve_add(a.data(), 40, b.data(), 40, got.data(), 80);
    CHECK(ref == got);
  }
}

TEST_CASE("dense products fall back to big integers without overflow") {
  std::vector<BigInt> big(20);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = BigInt("9223372036854775807") * static_cast<long>(i + 1);
  const auto a = DenseSeries::from_big(big);
  const auto b = DenseSeries::from_small(std::vector<std::int64_t>(20, 3));
  const auto p = mul_trunc(a, b, 20);
  for (std::size_t k = 0; k < 20; ++k) {
    BigInt want = 0;
    for (std::size_t i = 0; i <= k; ++i) want += big[i] * 3;
    CHECK(p.at(k) == want);
  }
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<std::int64_t> v(-50000, 50000);
  std::vector<std::int64_t> x(25), y(25);
  for (auto& t : x) t = v(rng);
  for (auto& t : y) t = v(rng);
  const auto q = mul_trunc(DenseSeries::from_small(x), DenseSeries::from_small(y), 25);
  for (std::size_t k = 0; k < 25; ++k) {
    BigInt want = 0;
    for (std::size_t i = 0; i <= k; ++i) want += BigInt(static_cast<long>(x[i])) * static_cast<long>(y[k - i]);
    CHECK(q.at(k) == want);
  }
}

}  // TEST_SUITE
