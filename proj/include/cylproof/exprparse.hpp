#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cylproof/polyqz.hpp"
#include "cylproof/ssums.hpp"

namespace cylproof {

// Sum of terms  coeff(q, z) * q^{a . (r_1..r_n, s_1..s_n)} [* S_m(rho|sigma)].
// Produced by parse_symbolic from text such as
//   "q^{r_2+r_3+s_2+s_3}(1-q^{r_1+s_1+1})"  or  "S((0,1,1)|(0,1,1)) - q (1-z) S((2,1,1)|(1,1,1))".
// Grammar: sums and differences of products; factors are integers, q, z,
// parenthesized expressions, and S((..)|(..)); '^' takes an integer or a braced
// linear form in r_i, s_i; '/' divides by a monomial; juxtaposition multiplies.
struct SymbolicTerm {
  std::vector<int> lin;         // exponent of q as a linear form in r and s (length 2n)
  std::optional<SIndex> s;      // at most one S factor per term
  friend auto operator<=>(const SymbolicTerm&, const SymbolicTerm&) = default;
  friend bool operator==(const SymbolicTerm&, const SymbolicTerm&) = default;
};

class SymbolicSum {
 public:
  std::map<SymbolicTerm, PolyQZ> terms;

  // Requires every term to carry an S factor and no symbolic exponent.
  SExpr to_sexpr(int m) const;
};

// m fixes the family and the index length k - 1 (m = 0 allows no S factors or r, s variables).
// Throws std::invalid_argument with the offending position on malformed input.
SymbolicSum parse_symbolic(const std::string& text, int m);

// Convenience: a Laurent polynomial in q and z written with products and parentheses.
PolyQZ parse_poly_expr(const std::string& text);

}  // namespace cylproof
