#include "cylproof/identities.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cylproof/exprparse.hpp"
#include "cylproof/qseries.hpp"

namespace cylproof {

namespace {

const std::vector<SumProductRow> kTable11 = {
    {{8, 0, 0}, "q^{r_1+r_2+r_3+s_1+s_2+s_3}", {2, 3, 3, 4, 4, 5, 5}, false, ""},
    {{7, 1, 0}, "q^{r_2+r_3+s_1+s_2+s_3}", {1, 2, 3, 4, 4, 5, 5}, false, ""},
    {{7, 0, 1}, "q^{r_1+r_2+r_3+s_2+s_3}", {1, 2, 3, 4, 4, 5, 5}, false, ""},
    {{6, 2, 0}, "q^{r_3+s_1+s_2+s_3}", {1, 2, 2, 3, 4, 5, 5}, false, ""},
    {{6, 1, 1}, "q^{r_2+r_3+s_2+s_3}(1-q^{r_1+s_1+1})", {1, 1, 3, 3, 4, 5, 5}, false, ""},
    {{6, 0, 2}, "q^{r_1+r_2+r_3+s_3}", {1, 2, 2, 3, 4, 5, 5}, false, ""},
    {{5, 3, 0}, "q^{s_1+s_2+s_3}", {1, 2, 2, 3, 3, 4, 5}, false, ""},
    {{5, 2, 1}, "q^{r_3+s_2+s_3}(1-q^{r_2+s_1+1})", {1, 1, 2, 3, 4, 4, 5}, false, ""},
    {{5, 1, 2}, "q^{r_2+r_3+s_3}(1-q^{r_1+s_2+1})", {1, 1, 2, 3, 4, 4, 5}, false, ""},
    {{5, 0, 3}, "q^{r_1+r_2+r_3}", {1, 2, 2, 3, 3, 4, 5}, false, ""},
    {{4, 3, 1}, "q^{s_2+s_3}(1-q^{r_3+s_1+1})", {1, 1, 2, 3, 3, 4, 5}, false, ""},
    {{4, 2, 2}, "q^{r_3+s_3}(1-q^{r_2+s_2+1})", {1, 1, 2, 2, 4, 4, 5}, false, ""},
    {{4, 1, 3}, "q^{r_2+r_3}(1-q^{r_1+s_3+1})", {1, 1, 2, 3, 3, 4, 5}, false, ""},
    {{3, 3, 2}, "q^{s_3}(1-q^{r_3+s_2+1})", {1, 1, 2, 2, 3, 5, 5}, false, ""},
    {{4, 4, 0}, "q^{r_1}(q^{s_2+s_3}-q^{r_3+s_1+s_2+s_3+1} + q^{r_1+r_2+r_3+1} )", {1, 2, 2, 3, 3, 4, 4}, true, ""},
};

// The (5,2,3) row carries the same p_c as (5,3,2), as typeset; the product
// sides of the two rows coincide, so the row still holds.
const std::vector<SumProductRow> kTable13 = {
    {{10, 0, 0}, "q^{r_1+r_2+r_3+s_1+s_2+s_3}", {2, 3, 3, 4, 4, 5, 5, 6, 6}, false, ""},
    {{9, 1, 0}, "q^{r_2+r_3+s_1+s_2+s_3}", {1, 2, 3, 4, 4, 5, 5, 6, 6}, false, ""},
    {{9, 0, 1}, "q^{r_1+r_2+r_3+s_2+s_3}", {1, 2, 3, 4, 4, 5, 5, 6, 6}, false, ""},
    {{8, 2, 0}, "q^{r_3+s_1+s_2+s_3}", {1, 2, 2, 3, 4, 5, 5, 6, 6}, false, ""},
    {{8, 1, 1}, "q^{r_2+r_3+s_2+s_3}(1-q^{r_1+s_1+1})", {1, 1, 3, 3, 4, 5, 5, 6, 6}, false, ""},
    {{8, 0, 2}, "q^{r_1+r_2+r_3+s_3}", {1, 2, 2, 3, 4, 5, 5, 6, 6}, false, ""},
    {{7, 3, 0}, "q^{s_1+s_2+s_3}", {1, 2, 2, 3, 3, 4, 5, 6, 6}, false, ""},
    {{7, 2, 1}, "q^{r_3+s_2+s_3}(1-q^{r_2+s_1+1})", {1, 1, 2, 3, 4, 4, 5, 6, 6}, false, ""},
    {{7, 1, 2}, "q^{r_2+r_3+s_3}(1-q^{r_1+s_2+1})", {1, 1, 2, 3, 4, 4, 5, 6, 6}, false, ""},
    {{7, 0, 3}, "q^{r_1+r_2+r_3}", {1, 2, 2, 3, 3, 4, 5, 6, 6}, false, ""},
    {{6, 3, 1}, "q^{s_2+s_3}(1-q^{r_3+s_1+1})", {1, 1, 2, 3, 3, 4, 5, 5, 6}, false, ""},
    {{6, 2, 2}, "q^{r_3+s_3}(1-q^{r_2+s_2+1})", {1, 1, 2, 2, 4, 4, 5, 5, 6}, false, ""},
    {{6, 1, 3}, "q^{r_2+r_3}(1-q^{r_1+s_3+1})", {1, 1, 2, 3, 3, 4, 5, 5, 6}, false, ""},
    {{5, 3, 2}, "q^{s_3}(1-q^{r_3+s_2+1})", {1, 1, 2, 2, 3, 4, 5, 5, 6}, false, ""},
    {{5, 2, 3}, "q^{s_3}(1-q^{r_3+s_2+1})", {1, 1, 2, 2, 3, 4, 5, 5, 6}, false, ""},
    {{4, 3, 3}, "(1-q^{r_3+s_3+1})", {1, 1, 2, 2, 3, 3, 5, 6, 6}, false, ""},
    {{6, 4, 0}, "q^{s_2+s_3}(q^{-r_1 + s_1} - q^{r_3}+ q^{r_2 + r_3 + s_1 + 1})", {1, 2, 2, 3, 3, 4, 4, 5, 6}, true, ""},
    // The summand is the z = 1 image of the stored (6,0,4) claim; the printed
    // one below differs in three places and fails at q^2.
    {{6, 0, 4},
     "q^{r_3} - q^{r_2 + r_3 + s_3 + 1} - q^{r_1}+ q^{2 r_1 + r_2 + r_3}+ q^{r_1 + r_2 + r_3 + s_2 + s_3 + 1}"
     " + (1 - q) q^{r_1+s_3} (1-q^{r_3} - q^{r_3+s_2+1})"
     " - (1-q)q^{2r_1}(q^{r_3} - q^{s_3} - q^{ r_2 + r_3 + s_3+1} + q^{ r_1 + r_2 + r_3 + s_3+3}"
     " +q^{ s_2 + s_3+2} + q^{ r_3 + s_2 + s_3+1} - q^{ r_3 + s_1 + s_2 + s_3+3})"
     " +(1-q)(1-q^2)q^{3r_1}(1-q^{r_3} - q^{r_3+s_3+1}-q^{s_1+s_2+s_3+3})",
     {1, 2, 2, 3, 3, 4, 4, 5, 6}, true,
     "q^{r_3} - q^{r_2 + r_3 + s_3 + 1} - q^{r_1}+ q^{2 r_1 + r_2 + r_3}+ q^{r_1 + r_2 + r_3 + s_2 + s_3 + 1}"
     " + (1 - q) q^{r_1+s_3} (1-q^{r_3} - q^{r_3+s_3+1})"
     " - (1-q)q^{2r_1}(q^{r_3} - q^{s_3} - q^{ r_2 + r_3 + s_3+1} + q^{ r_1 + r_2 + r_3 + s_3+3}"
     " +q^{ s_2 + s_3+2} + q^{ r_3 + s_2 + s_3+1} - q^{ r_3 + s_1 + s_2 + s_3+3})"
     " +(1-q)(1-q^2)q^{r_3}(1-q^{r_3} - q^{r_3+s_3+1}+q^{s_1+s_2+s_3+3})"},
    {{5, 5, 0},
     "q^{-2 r_1 + s_1 + s_2 + s_3} - q^{-r_1 + r_3 + s_2 + s_3}- q^{s_2 + s_3 - 1} +  q^{r_3 + s_1 + s_2 + s_3}"
     " +  q^{-r_1 + r_2 + r_3 + s_1 + s_2 + s_3 + 1}",
     {1, 2, 2, 3, 3, 4, 4, 5, 5}, true, ""},
    {{5, 4, 1},
     "q^{-r_1 + s_2 + s_3} - q^{-r_1 + r_3 + s_1 + s_2 + s_3 + 1} - q^{s_1 + s_2 + s_3}- q^{r_3 + s_3}"
     "  + q^{r_2 + r_3 + s_2 + s_3 + 1}",
     {1, 1, 2, 3, 3, 4, 4, 5, 6}, true, ""},
    {{5, 1, 4}, "q^{-r_1 + r_3} - q^{-r_1 + r_2 + r_3 + s_3 + 1} + q^{r_2 + r_3 + s_2 + s_3 + 1}- (1 - q) q^{r_3 + s_3} -1",
     {1, 1, 2, 3, 3, 4, 4, 5, 6}, true, ""},
    {{4, 4, 2},
     "q^{-r_1 + s_3} - q^{-r_1 + r_3 + s_2 + s_3 + 1} - q^{s_2 + s_3} - q^{r_3}+  q^{r_3 + s_1 + s_2 + s_3 + 1}"
     "  + q^{r_2 + r_3 + s_3 + 1}",
     {1, 1, 2, 2, 3, 4, 4, 6, 6}, true, ""},
};

// ---------------------------------------------------------------------------
// Dense coefficient vectors c[0..Q] for the classical sums.

using Coeffs = std::vector<BigInt>;

// 1/(q;q)_n for n = 0..max_n, each to order Q.
std::vector<Coeffs> reciprocal_table(int max_n, int Q) {
  std::vector<Coeffs> t;
  Coeffs c(static_cast<std::size_t>(Q) + 1);
  c[0] = 1;
  t.push_back(c);
  for (int n = 1; n <= max_n; ++n) {
    for (int i = n; i <= Q; ++i) c[i] += c[i - n];
    t.push_back(c);
  }
  return t;
}

Coeffs from_poly(const PolyQZ& p, int Q) {
  Coeffs c(static_cast<std::size_t>(Q) + 1);
  for (const auto& [e, v] : p.terms()) {
    if (e.z != 0 || e.q < 0) throw std::logic_error("from_poly: expected a polynomial in q");
    if (e.q <= Q) c[e.q] += v;
  }
  return c;
}

// a * b truncated to `len` coefficients.
Coeffs mul(const Coeffs& a, const Coeffs& b, std::size_t len) {
  Coeffs out(len);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
      if (sgn(b[j]) != 0) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

// acc += q^shift * a.
void add_shifted(Coeffs& acc, const Coeffs& a, long shift) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long k = shift + static_cast<long>(i);
    if (k >= 0 && k < static_cast<long>(acc.size())) acc[static_cast<std::size_t>(k)] += a[i];
  }
}

TruncSeries to_series(const Coeffs& c, int Q) {
  TruncSeries s(Q);
  for (int i = 0; i <= Q && i < static_cast<int>(c.size()); ++i) {
    if (sgn(c[i]) != 0) s.add_term(i, 0, c[i]);
  }
  return s;
}

std::size_t room(int Q, long e) { return static_cast<std::size_t>(Q - e + 1); }

int isqrt_bound(int Q) { return static_cast<int>(std::sqrt(2.0 * Q)) + 2; }

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("product text: empty number in '" + text + "'");
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("product text: bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

const std::vector<SumProductRow>& sum_product_table(int m) {
  if (m == 11) return kTable11;
  if (m == 13) return kTable13;
  throw std::invalid_argument("sum_product_table: no table for modulus " + std::to_string(m));
}

SExpr pc_to_sexpr(const std::string& pc, int m) {
  const SymbolicSum s = parse_symbolic(pc, m);
  const int n = family_k(m) - 1;
  SExpr out(m);
  for (const auto& [term, coeff] : s.terms) {
    if (term.s) throw std::invalid_argument("pc_to_sexpr: p_c may not contain S factors");
    std::vector<int> rho(term.lin.begin(), term.lin.begin() + n);
    std::vector<int> sigma(term.lin.begin() + n, term.lin.end());
    out.add(make_sindex(m, std::move(rho), std::move(sigma)), coeff);
  }
  return out;
}

TruncSeries sum_side(const std::string& pc, int m, int Q, SEvaluator& ev) {
  return ev.eval(pc_to_sexpr(pc, m), Q, TruncSeries::kExactZ).at_z_one().truncated(Q);
}

TruncSeries product_from_spec(const std::string& spec, int Q) {
  TruncSeries num = TruncSeries::one(Q);
  TruncSeries den = TruncSeries::one(Q);
  std::stringstream ss(spec);
  std::string factor;
  bool any = false;
  while (std::getline(ss, factor, ';')) {
    factor.erase(0, factor.find_first_not_of(' '));
    factor.erase(factor.find_last_not_of(' ') + 1);
    if (factor.empty()) continue;
    any = true;
    bool numerator = false;
    if (factor[0] == '*') {
      numerator = true;
      factor.erase(0, 1);
    }
    TruncSeries f;
    if (factor == "euler") {
      f = poch_infinite({1, 1, 0}, Q);
    } else if (factor.rfind("theta:", 0) == 0) {
      const auto at = factor.find('@');
      if (at == std::string::npos) throw std::invalid_argument("product text: theta factor needs '@modulus' in '" + factor + "'");
      const std::vector<int> ex = parse_int_list(factor.substr(6, at - 6));
      const std::vector<int> mod = parse_int_list(factor.substr(at + 1));
      if (mod.size() != 1) throw std::invalid_argument("product text: one modulus expected in '" + factor + "'");
      for (int a : ex) {
        if (a <= 0 || a >= mod[0]) throw std::invalid_argument("product text: theta exponent out of range in '" + factor + "'");
      }
      f = theta_product(ex, mod[0], Q);
    } else if (factor.rfind("poch:", 0) == 0) {
      const auto at = factor.find('@');
      if (at == std::string::npos) throw std::invalid_argument("product text: poch factor needs '@step' in '" + factor + "'");
      const std::vector<int> a = parse_int_list(factor.substr(5, at - 5));
      const std::vector<int> t = parse_int_list(factor.substr(at + 1));
      if (a.size() != 1 || t.size() != 1 || a[0] < 1 || t[0] < 1) {
        throw std::invalid_argument("product text: bad poch factor '" + factor + "'");
      }
      f = poch_infinite({1, a[0], 0}, Q, t[0]);
    } else {
      throw std::invalid_argument("product text: unknown factor '" + factor + "'");
    }
    if (numerator) {
      num = (num * f).truncated(Q);
    } else {
      den = (den * f).truncated(Q);
    }
  }
  if (!any) throw std::invalid_argument("product text: no factors");
  return (num * inverse(den)).truncated(Q);
}

std::string table_product_spec(const SumProductRow& row, int m) {
  std::string s = "theta:";
  for (std::size_t i = 0; i < row.residues.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(row.residues[i]);
  }
  return s + "@" + std::to_string(m) + ";euler";
}

TruncSeries direct_unit_shift_sum(int m, int Q) {
  if (m != 11 && m != 13) throw std::invalid_argument("direct_unit_shift_sum: modulus must be 11 or 13");
  const bool cross = family_of(m) == Family::kMinusOne;  // extra q^{2 r_3 s_3}
  const int B = isqrt_bound(Q);
  const auto rec = reciprocal_table(2 * B + 2, Q);
  Coeffs acc(static_cast<std::size_t>(Q) + 1);
  for (int r1 = 0; r1 <= B; ++r1)
    for (int r2 = 0; r2 <= r1; ++r2)
      for (int r3 = 0; r3 <= r2; ++r3)
        for (int s1 = 0; s1 <= B; ++s1)
          for (int s2 = 0; s2 <= s1; ++s2)
            for (int s3 = 0; s3 <= s2; ++s3) {
              long e = 0;
              const int r[3] = {r1, r2, r3};
              const int s[3] = {s1, s2, s3};
              for (int i = 0; i < 3; ++i) e += r[i] * r[i] - r[i] * s[i] + s[i] * s[i] + r[i] + s[i];
              if (cross) e += 2L * r3 * s3;
              if (e > Q) continue;
              const std::size_t len = room(Q, e);
              Coeffs t = rec[r1 - r2];
              for (int d : {r2 - r3, r3, s1 - s2, s2 - s3, s3, r3 + s3 + 1}) t = mul(t, rec[d], len);
              add_shifted(acc, t, e);
            }
  return to_series(acc, Q);
}

TruncSeries rogers_ramanujan_sum(int a, int Q) {
  const auto rec = reciprocal_table(isqrt_bound(Q), Q);
  Coeffs acc(static_cast<std::size_t>(Q) + 1);
  for (long n = 0; n * n + a * n <= Q; ++n) add_shifted(acc, rec[n], n * n + a * n);
  return to_series(acc, Q);
}

TruncSeries andrews_gordon_sum(int r, int i, int Q) {
  if (r < 2 || i < 1 || i > r) throw std::invalid_argument("andrews_gordon_sum: need r >= 2 and 1 <= i <= r");
  const int len = r - 1;
  const int B = isqrt_bound(Q);
  const auto rec = reciprocal_table(B, Q);
  Coeffs acc(static_cast<std::size_t>(Q) + 1);
  std::vector<int> n(len, 0);
  // Nonincreasing tuples n_1 >= ... >= n_{r-1} >= 0, odometer style from the right.
  std::function<void(int, int)> walk = [&](int pos, int bound) {
    if (pos == len) {
      long e = 0;
      for (int j = 0; j < len; ++j) e += static_cast<long>(n[j]) * n[j];
      for (int j = i - 1; j < len; ++j) e += n[j];
      if (e > Q) return;
      const std::size_t sz = room(Q, e);
      Coeffs t = rec[n[0]];
      for (int j = 0; j + 1 < len; ++j) t = mul(t, from_poly(qbinom(n[j], n[j] - n[j + 1]), Q), sz);
      add_shifted(acc, t, e);
      return;
    }
    for (int v = 0; v <= bound; ++v) {
      n[pos] = v;
      walk(pos + 1, v);
    }
  };
  walk(0, B);
  return to_series(acc, Q);
}

TruncSeries andrews_gordon_product(int r, int i, int Q) {
  const int M = 2 * r + 1;
  return product_from_spec("*theta:" + std::to_string(i) + "@" + std::to_string(M) + ";*poch:" + std::to_string(M) + "@" +
                               std::to_string(M) + ";euler",
                           Q);
}

TruncSeries asw_mod7_sum(int Q) {
  const int B = isqrt_bound(Q);
  const auto rec = reciprocal_table(B, Q);
  Coeffs acc(static_cast<std::size_t>(Q) + 1);
  for (int r1 = 0; r1 <= B; ++r1)
    for (int s1 = 0; s1 <= 2 * r1; ++s1) {
      const long e = r1 * r1 - r1 * s1 + s1 * s1 + r1 + s1;
      if (e > Q) continue;
      add_shifted(acc, mul(rec[r1], from_poly(qbinom(2 * r1, s1), Q), room(Q, e)), e);
    }
  return to_series(acc, Q);
}

TruncSeries asw_mod10_sum(int Q, bool printed_denominator) {
  const int B = isqrt_bound(Q);
  const auto rec = reciprocal_table(2 * B + 2, Q);
  Coeffs acc(static_cast<std::size_t>(Q) + 1);
  for (int r1 = 0; r1 <= B; ++r1)
    for (int r2 = 0; r2 <= r1; ++r2)
      for (int s1 = 0; s1 <= B; ++s1)
        for (int s2 = 0; s2 <= s1; ++s2) {
          const long e = r1 * r1 - r1 * s1 + s1 * s1 + r2 * r2 - r2 * s2 + s2 * s2 + r1 + r2 + s1 + s2;
          if (e > Q) continue;
          const int third = printed_denominator ? s1 - r2 : s1 - s2;
          if (third < 0) continue;  // 1/(q;q)_n vanishes for negative n
          const std::size_t len = room(Q, e);
          Coeffs t = rec[r1 - r2];
          for (int d : {r2, third, s2, r2 + s2 + 1}) t = mul(t, rec[d], len);
          add_shifted(acc, t, e);
        }
  TruncSeries sum = to_series(acc, Q);
  return (poch_infinite({1, 1, 0}, Q) * sum).truncated(Q);
}

TruncSeries cdu_mod8_sum(int Q) {
  const int B = isqrt_bound(Q);
  const auto rec = reciprocal_table(B, Q);
  Coeffs acc(static_cast<std::size_t>(Q) + 1);
  for (int r1 = 0; r1 <= B; ++r1)
    for (int s1 = 0; s1 <= r1; ++s1)
      for (int r2 = 0; r2 <= s1; ++r2)
        for (int s2 = 0; s2 <= r1; ++s2) {
          const long e = r1 * r1 - r1 * s1 + s1 * s1 + r2 * r2 + s2 * s2 + s1 * s2 + r1 + r2 + s1 + s2;
          if (e > Q) continue;
          const std::size_t len = room(Q, e);
          Coeffs t = mul(rec[r1], from_poly(qbinom(r1, s1), Q), len);
          t = mul(t, from_poly(qbinom(r1, s2), Q), len);
          t = mul(t, from_poly(qbinom(s1, r2), Q), len);
          add_shifted(acc, t, e);
        }
  return to_series(acc, Q);
}

// ---------------------------------------------------------------------------
// Suites

namespace {

IdentityResult compare(const std::string& id, const TruncSeries& lhs, const TruncSeries& rhs, int Q) {
  IdentityResult r;
  r.id = id;
  r.order = Q;
  r.pass = agree(lhs, rhs, Q);
  if (!r.pass) r.detail = first_difference(lhs, rhs, Q);
  return r;
}

using Check = std::function<IdentityResult(SEvaluator&)>;

std::vector<std::pair<std::string, Check>> classical_checks(int order) {
  const int single = order > 0 ? order : 200;
  const int multi = order > 0 ? order : 60;
  std::vector<std::pair<std::string, Check>> out;
  for (int a : {0, 1}) {
    const std::string id = a == 0 ? "RR1" : "RR2";
    out.push_back({id, [=](SEvaluator&) {
                     return compare(id, rogers_ramanujan_sum(a, single), product_from_spec("theta:" + std::to_string(a + 1) + "@5", single),
                                    single);
                   }});
  }
  for (int r = 2; r <= 4; ++r) {
    for (int i = 1; i <= r; ++i) {
      const std::string id = "AG(" + std::to_string(r) + "," + std::to_string(i) + ")";
      const int Q = r == 2 ? single : multi;
      out.push_back({id, [=](SEvaluator&) { return compare(id, andrews_gordon_sum(r, i, Q), andrews_gordon_product(r, i, Q), Q); }});
    }
  }
  out.push_back({"ASW-mod7", [=](SEvaluator&) {
                   return compare("ASW-mod7", asw_mod7_sum(multi), product_from_spec("theta:2,3,3@7", multi), multi);
                 }});
  out.push_back({"ASW-mod10", [=](SEvaluator&) {
                   const TruncSeries rhs = product_from_spec("theta:2,3,3,4,4,5@10", multi);
                   IdentityResult r = compare("ASW-mod10", asw_mod10_sum(multi, false), rhs, multi);
                   const TruncSeries typeset = asw_mod10_sum(multi, true);
                   r.detail += (r.detail.empty() ? "" : "; ");
                   r.detail += agree(typeset, rhs, multi) ? "typeset denominator (q;q)_{s1-r2} also agrees"
                                                          : "typeset denominator (q;q)_{s1-r2} differs at " + first_difference(typeset, rhs, multi) +
                                                                "; (q;q)_{s1-s2} used";
                   return r;
                 }});
  out.push_back({"CDU-mod8", [=](SEvaluator&) {
                   const TruncSeries lhs = cdu_mod8_sum(multi);
                   IdentityResult r = compare("CDU-mod8", lhs, product_from_spec("theta:2,3,3,4@8", multi), multi);
                   const TruncSeries typeset = product_from_spec("theta:2,3,3,4,4,5@10", multi);
                   r.detail += (r.detail.empty() ? "" : "; ");
                   r.detail += agree(lhs, typeset, multi) ? "typeset product theta(2,3,3,4,4,5;10) also agrees"
                                                          : "typeset product theta(2,3,3,4,4,5;10) differs at " +
                                                                first_difference(lhs, typeset, multi) + "; theta(2,3,3,4;8) used";
                   return r;
                 }});
  return out;
}

IdentityResult check_row(int m, const SumProductRow& row, int Q, SEvaluator& ev) {
  const TruncSeries rhs = product_from_spec(table_product_spec(row, m), Q);
  IdentityResult r = compare("M" + std::to_string(m) + profile_to_string(row.profile), sum_side(row.pc, m, Q, ev), rhs, Q);
  if (row.printed_pc.empty()) return r;
  const TruncSeries typeset = sum_side(row.printed_pc, m, Q, ev);
  r.detail += (r.detail.empty() ? "" : "; ");
  r.detail += agree(typeset, rhs, Q) ? "typeset summand also agrees"
                                     : "typeset summand differs at " + first_difference(typeset, rhs, Q) + "; summand from the stored claim used";
  return r;
}

std::vector<std::pair<std::string, Check>> table_checks(int m, int order) {
  const int Q = order > 0 ? order : 40;
  std::vector<std::pair<std::string, Check>> out;
  for (const auto& row : sum_product_table(m)) {
    out.push_back({"M" + std::to_string(m) + profile_to_string(row.profile), [=](SEvaluator& ev) { return check_row(m, row, Q, ev); }});
  }
  return out;
}

std::vector<std::pair<std::string, Check>> extra_checks(int order) {
  const int Q = order > 0 ? order : 60;
  std::vector<std::pair<std::string, Check>> out;
  struct Extra {
    const char* id;
    const char* pc;
    const char* product;
  };
  for (const Extra& x : {Extra{"A1", "q^{s_1+s_2}(1+q^{r_1+r_2+1})", "theta:1,1,3,4,4,4@10;euler"},
                         Extra{"A2", "q^{s_1+s_2}(1-q^{r_1+r_2+1})", "theta:2,2,2,3,3,3@10;euler"}}) {
    const std::string id = x.id;
    const std::string pc = x.pc;
    const std::string prod = x.product;
    out.push_back({id, [=](SEvaluator& ev) {
                     IdentityResult r = compare(id, sum_side(pc, 10, Q, ev), product_from_spec(prod, Q), Q);
                     r.fatal = false;
                     return r;
                   }});
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() { return {"classical", "mod11", "mod13", "extra"}; }

IdentityResult verify_table_row(int m, const SumProductRow& row, int Q) {
  SEvaluator ev;
  return check_row(m, row, Q, ev);
}

IdentityResult verify_unit_shift_example(int m, int Q) {
  const std::string res = m == 11 ? "2,3,3,4,4,5,5" : "2,3,3,4,4,5,5,6,6";
  return compare("M" + std::to_string(m) + "-direct", direct_unit_shift_sum(m, Q),
                 product_from_spec("theta:" + res + "@" + std::to_string(m) + ";euler", Q), Q);
}

std::vector<IdentityResult> verify_suite(const std::string& suite, int order, int threads) {
  std::vector<std::pair<std::string, Check>> checks;
  if (suite == "classical") {
    checks = classical_checks(order);
  } else if (suite == "mod11") {
    checks = table_checks(11, order);
  } else if (suite == "mod13") {
    checks = table_checks(13, order);
  } else if (suite == "extra") {
    checks = extra_checks(order);
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  std::vector<IdentityResult> results(checks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    SEvaluator ev;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= checks.size()) return;
      const auto t0 = std::chrono::steady_clock::now();
      results[i] = checks[i].second(ev);
      results[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(checks.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace cylproof
