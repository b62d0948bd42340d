#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cylproof/polyqz.hpp"
#include "cylproof/series.hpp"

namespace cylproof {

// Shape of the multisum selected by m mod 3.
enum class Family { kMinusOne, kZero, kPlusOne };

Family family_of(int m);
// k = round(m / 3); index vectors have length k - 1. Throws for m < 5.
int family_k(int m);

// S_m(rho | sigma) with rho, sigma of length k - 1.
struct SIndex {
  int m = 0;
  std::vector<int> rho;
  std::vector<int> sigma;

  friend auto operator<=>(const SIndex&, const SIndex&) = default;
  friend bool operator==(const SIndex&, const SIndex&) = default;

  // Rendering S{m}[{rho},{sigma}], e.g. S11[{1,1,1},{1,1,1}].
  std::string to_string() const;
  // Largest absolute entry of rho and sigma.
  int max_abs_entry() const;
};

// Builds an SIndex and checks the vector lengths; throws std::invalid_argument.
SIndex make_sindex(int m, std::vector<int> rho, std::vector<int> sigma);
// Parses "S11[{1,1,1},{1,1,1}]".
SIndex parse_sindex(const std::string& text);

// e_i: i zeros followed by ones; delta_i: indicator of position i (1-based). Length n = k - 1.
std::vector<int> e_vec(int n, int i);
std::vector<int> delta_vec(int n, int i);
std::vector<int> vec_add(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> vec_scale(int c, const std::vector<int>& a);

// Finite PolyQZ-linear combination of S-terms sharing one modulus, kept canonical.
class SExpr {
 public:
  SExpr() = default;
  explicit SExpr(int m) : m_(m) {}
  static SExpr term(const SIndex& idx, const PolyQZ& coeff = PolyQZ(1));

  int modulus() const { return m_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<SIndex, PolyQZ>& terms() const { return terms_; }
  PolyQZ coefficient(const SIndex& idx) const;

  // Throws std::invalid_argument on a modulus mismatch.
  void add(const SIndex& idx, const PolyQZ& coeff);
  SExpr& operator+=(const SExpr& o);
  SExpr& operator-=(const SExpr& o);
  friend SExpr operator+(SExpr a, const SExpr& b) { return a += b; }
  friend SExpr operator-(SExpr a, const SExpr& b) { return a -= b; }
  friend SExpr operator*(const PolyQZ& c, const SExpr& e);
  friend bool operator==(const SExpr& a, const SExpr& b) { return a.terms_ == b.terms_ && (a.empty() || a.m_ == b.m_); }

  // One term per line: "<coeff> * S11[...]".
  std::string to_string() const;

 private:
  int m_ = 0;
  std::map<SIndex, PolyQZ> terms_;
};

// Canonical linear combination; throws on modulus mismatch.
SExpr sexpr_combine(const std::vector<std::pair<PolyQZ, SExpr>>& terms);
// Substitutes z -> z q^n: rho_1 += n and every coefficient p(z) -> p(z q^n).
SExpr z_shift(const SExpr& e, int n);

// Exact truncated evaluation with chain enumeration and cached factor tables.
// Not thread-safe; use one evaluator per thread.
class SEvaluator {
 public:
  SEvaluator();
  ~SEvaluator();
  SEvaluator(const SEvaluator&) = delete;
  SEvaluator& operator=(const SEvaluator&) = delete;

  // S_m(rho|sigma) to q-order Q and z-order Zmax (TruncSeries::kExactZ for all
  // z-powers). slack widens the chain enumeration bound without changing the
  // reported orders.
  TruncSeries eval(const SIndex& idx, int Q, int Zmax, int slack = 0);
  TruncSeries eval(const SExpr& e, int Q, int Zmax);
  // Number of chains visited by the most recent eval(SIndex) call.
  long last_chain_count() const { return last_chains_; }

  struct Tables;

 private:
  std::map<int, std::unique_ptr<Tables>> tables_;  // by Q
  std::map<std::tuple<SIndex, int, int>, TruncSeries> memo_;
  long last_chains_ = 0;
  Tables& tables_for(int Q);
};

TruncSeries eval_S(const SIndex& idx, int Q, int Zmax, int slack = 0);
TruncSeries eval_SExpr(const SExpr& e, int Q, int Zmax);

}  // namespace cylproof
