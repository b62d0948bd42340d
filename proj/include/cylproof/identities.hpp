#pragma once

#include <string>
#include <vector>

#include "cylproof/cylindric.hpp"
#include "cylproof/series.hpp"
#include "cylproof/ssums.hpp"

namespace cylproof {

// One row of a sum-product table: the sum over the S_m summand times p_c at
// z = 1 equals 1/((q;q)_inf theta(q^i_1, ..., q^i_t; q^m)).
struct SumProductRow {
  Profile profile;
  std::string pc;             // verbatim exponent-expression text
  std::vector<int> residues;  // the theta exponents
  bool under_line = false;
  std::string printed_pc;     // typeset text when it differs from pc, else empty
};

// Table rows for m = 11 (15 rows) and m = 13 (22 rows), in table order.
// Throws std::invalid_argument for other moduli.
const std::vector<SumProductRow>& sum_product_table(int m);

// Sum side: each monomial c q^{a.r + b.s} of p_c contributes c S_m(a|b) at z = 1.
SExpr pc_to_sexpr(const std::string& pc, int m);
TruncSeries sum_side(const std::string& pc, int m, int Q, SEvaluator& ev);

// Product text: ';'-separated factors, each a denominator unless prefixed by '*'.
//   theta:a,b,...@m   product of theta(q^a; q^m)
//   poch:a@t          (q^a; q^t)_inf
//   euler             (q; q)_inf
// Example: "theta:2,3,3,4,4,5,5@11;euler". Throws std::invalid_argument.
TruncSeries product_from_spec(const std::string& spec, int Q);
std::string table_product_spec(const SumProductRow& row, int m);

// z = 1 sum of the plain S_m summand with exponent shifts (1,..,1|1,..,1),
// enumerated directly without the S evaluator (m = 11 or 13).
TruncSeries direct_unit_shift_sum(int m, int Q);

struct IdentityResult {
  std::string id;
  bool pass = false;
  bool fatal = true;  // false for identities whose failure is only reported
  int order = 0;
  std::string detail;
  double seconds = 0;
};

// Suites: "classical", "mod11", "mod13", "extra". order <= 0 selects the
// default orders (200 for single sums, 60 for multiple sums, 40 for the
// tables, 60 for the extra identities). Identities run on up to `threads`
// workers; results keep suite order.
std::vector<IdentityResult> verify_suite(const std::string& suite, int order = 0, int threads = 1);
std::vector<std::string> suite_names();

// Single checks, exposed for tests.
IdentityResult verify_table_row(int m, const SumProductRow& row, int Q);
IdentityResult verify_unit_shift_example(int m, int Q);  // the (1..1|1..1) row by direct enumeration

// Classical sum sides to order Q.
TruncSeries rogers_ramanujan_sum(int a, int Q);  // sum q^{n^2 + a n}/(q;q)_n
TruncSeries andrews_gordon_sum(int r, int i, int Q);
TruncSeries andrews_gordon_product(int r, int i, int Q);
TruncSeries asw_mod7_sum(int Q);
// Mod 10 double sum times (q;q)_inf. With printed_denominator the third
// denominator factor is (q;q)_{s_1 - r_2} exactly as typeset; otherwise (q;q)_{s_1 - s_2}.
TruncSeries asw_mod10_sum(int Q, bool printed_denominator);
// Four-fold sum with three Gaussian binomials; its product is 1/theta(q^2,q^3,q^3,q^4; q^8).
TruncSeries cdu_mod8_sum(int Q);

}  // namespace cylproof
