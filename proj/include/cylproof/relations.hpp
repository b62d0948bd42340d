#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "cylproof/ssums.hpp"

namespace cylproof {

enum class RelKind { kR1 = 1, kR2 = 2, kR3 = 3, kR4 = 4 };

// Identifies one contiguous relation instance.
struct RelName {
  RelKind kind = RelKind::kR1;
  int i = 0;  // superscript for R1/R2; 0 for R3/R4
  std::vector<int> rho;
  std::vector<int> sigma;

  friend auto operator<=>(const RelName&, const RelName&) = default;
  friend bool operator==(const RelName&, const RelName&) = default;

  // R1[{i},{{a1,a2,a3},{b1,b2,b3}}] or R3[{{a1,a2,a3},{b1,b2,b3}}].
  std::string to_string() const;
  int max_abs_entry() const;
};

// Parses the rendering of RelName::to_string(); throws std::invalid_argument.
RelName parse_relname(const std::string& text);

struct Relation {
  RelName name;
  SExpr body;  // asserted to vanish
};

// Two readings of the printed relation list. kCorrected drops the z from the
// third coefficient of R2 and, for m = 1 mod 3, replaces the self-cancelling
// pair in R3 by the mirror image of R4. kAsPrinted follows the printed text.
enum class RelationForm { kCorrected, kAsPrinted };

// Throw std::invalid_argument when i is out of range, the side conditions fail,
// or the relation is not defined for this modulus.
Relation gen_R1(int m, int i, const std::vector<int>& rho, const std::vector<int>& sigma);
Relation gen_R2(int m, int i, const std::vector<int>& rho, const std::vector<int>& sigma,
                RelationForm form = RelationForm::kCorrected);
Relation gen_R3(int m, const std::vector<int>& rho, const std::vector<int>& sigma,
                RelationForm form = RelationForm::kCorrected);
Relation gen_R4(int m, const std::vector<int>& rho, const std::vector<int>& sigma,
                RelationForm form = RelationForm::kCorrected);
Relation generate(int m, const RelName& name, RelationForm form = RelationForm::kCorrected);
// True when the side conditions for the name hold for modulus m.
bool relation_valid(int m, const RelName& name);

// The relation kinds (with superscripts) defined for modulus m, in canonical order.
std::vector<RelName> relation_shapes(int m);

// All valid instances with rho, sigma in [-N, N]^{k-1}, ordered by shape then (rho, sigma).
std::vector<Relation> spanning_set(int m, int N, RelationForm form = RelationForm::kCorrected);

// Relations reachable from the seed terms: depth 0 collects every valid relation
// (entries within [-cap, cap]) with at least one term in the seed; each further
// depth adds every relation touching a term of an already collected relation.
// Stops at closure or after max_depth extensions. Deterministic order: by depth,
// then by name.
struct FrontierResult {
  std::vector<Relation> relations;
  std::vector<std::size_t> depth_end;  // relations[0, depth_end[d]) have depth <= d
  bool closed = false;
};
FrontierResult frontier_set(int m, const std::set<SIndex>& seed, int cap, int max_depth,
                            RelationForm form = RelationForm::kCorrected);

// Relations whose terms include t, with entries within [-cap, cap].
std::vector<RelName> relations_touching(int m, const SIndex& t, int cap);

// Numeric zero-check of a relation body.
bool relation_vanishes(const Relation& rel, int Q, int Zmax, SEvaluator& ev);

// Picks the relation form whose m = 1 mod 3 (and R2) instances vanish numerically;
// throws std::runtime_error if neither does.
RelationForm select_form(int m, int Q = 20, int Zmax = 4);

}  // namespace cylproof
