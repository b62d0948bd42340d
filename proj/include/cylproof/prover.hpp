#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cylproof/cylindric.hpp"
#include "cylproof/relations.hpp"
#include "cylproof/ssums.hpp"

namespace cylproof {

// Column order key: larger keys come first. Graded by max-norm, then by the sum
// of absolute entries, then lexicographically on (rho, sigma).
using ColKey = unsigned __int128;
ColKey column_key(const SIndex& s);
SIndex key_to_sindex(ColKey key, int m);

// h = sum_j (num_j / den_j) * relation_j.
struct Certificate {
  int m = 0;
  Profile target;  // empty when the target is not a profile recurrence
  struct Entry {
    RelName name;
    PolyQZ num;
    PolyQZ den;
  };
  std::vector<Entry> entries;

  int max_index_magnitude() const;
  std::string to_text() const;
  // Throws std::runtime_error carrying the line number on malformed input.
  static Certificate parse(const std::string& text);
};

// Expands the certificate with relation bodies over one common denominator and
// compares with the scaled target. Throws std::invalid_argument on modulus mismatch.
bool verify_certificate(const Certificate& cert, const SExpr& h, RelationForm form = RelationForm::kCorrected);

class NonMemberError : public std::runtime_error {
 public:
  NonMemberError(const std::string& what, SExpr remainder)
      : std::runtime_error(what), remainder_(std::move(remainder)) {}
  const SExpr& remainder() const { return remainder_; }

 private:
  SExpr remainder_;
};

// Sparse matrix over the Laurent ring Z[q^+-1, z^+-1] with one column per S-term.
// Rows carry provenance: den * row = sum_j prov_j * relation_j (+ hc * target).
class RelMatrix {
 public:
  struct Entry {
    ColKey key;
    PolyQZ val;
  };
  struct ProvTerm {
    std::uint32_t rel;
    PolyQZ coeff;
  };
  struct Row {
    std::vector<Entry> entries;  // descending key, nonzero values
    std::vector<ProvTerm> prov;  // ascending relation index
    PolyQZ hc;                   // coefficient of the reduced target
    PolyQZ den = PolyQZ(1);
  };
  struct Reduction {
    SExpr remainder;
    Row row;  // final state: den * remainder-row = sum prov_j R_j + hc * h
  };

  explicit RelMatrix(int m) : m_(m) {}
  // One row per relation, in the given order.
  static RelMatrix build(const std::vector<Relation>& relations);

  int modulus() const { return m_; }
  const std::vector<Relation>& relations() const { return relations_; }
  // Nonzero rows of the echelon form.
  std::size_t row_count() const { return rows_.size(); }
  std::size_t zero_rows() const { return zero_rows_; }
  bool echelonized() const { return echelon_; }
  std::size_t column_count() const;

  // Adds the relations as new rows; after echelonize() they are inserted into the echelon form.
  void add_relations(const std::vector<Relation>& relations);
  // Fraction-free row echelon form; zero rows are dropped and counted. Rows
  // added later are folded in by the next call.
  void echelonize();
  // Rows sorted by leading column (strictly increasing column position).
  std::vector<const Row*> rows_in_order() const;
  SExpr row_as_sexpr(const Row& r) const;

  // Reduces h against the echelon rows; the remainder is empty iff h is in the row span.
  Reduction reduce(const SExpr& h) const;
  // Throws NonMemberError when h is not in the span.
  Certificate extract_certificate(const SExpr& h) const;
  // Every row equals its provenance expansion after clearing its denominator.
  bool check_provenance() const;

 private:
  int m_;
  std::vector<Relation> relations_;
  std::vector<Row> rows_;
  std::size_t pending_from_ = 0;
  std::map<ColKey, std::size_t, std::greater<ColKey>> pivot_of_;
  std::size_t zero_rows_ = 0;
  bool echelon_ = false;

  Row row_from(const SExpr& e) const;
  void insert(Row row);
};

// Elimination over Z/p at a random point (q0, z0); used to pick the relations
// that the exact elimination needs. Decisions taken here are re-done exactly.
class ModularImage {
 public:
  ModularImage(int m, std::uint64_t seed);
  ~ModularImage();
  ModularImage(const ModularImage&) = delete;
  ModularImage& operator=(const ModularImage&) = delete;

  void add_relations(const std::vector<Relation>& relations);
  std::size_t row_count() const;
  std::size_t zero_rows() const;
  // Relation indices (into the added order) of a combination equal to h at the
  // sample point, or nullopt when h is outside the span there.
  std::optional<std::vector<std::size_t>> support(const SExpr& h) const;
  // Subsets of at most max_size relations whose span contains h at the sample
  // point, all of the smallest size that has any, in enumeration order; at most
  // `limit` of them. Gives up (empty result) after `budget` candidate subsets.
  std::vector<std::vector<std::size_t>> smallest_supports(const SExpr& h, std::size_t max_size, std::size_t limit,
                                                          std::uint64_t budget) const;

 private:
  struct Impl;
  Impl* impl_;
};

enum class FeedMode { kFrontier, kSpanning };

struct ProverOptions {
  int cap = 6;
  int max_depth = 6;
  FeedMode mode = FeedMode::kFrontier;
  RelationForm form = RelationForm::kCorrected;
  bool modular_filter = true;
  bool minimize = true;
  std::size_t minimize_limit = 64;  // greedy support pruning only below this size
  std::size_t sparsest_max = 3;     // exhaustive search for supports up to this size
  std::uint64_t sparsest_budget = 4'000'000;
  std::uint64_t seed = 0x5eed5eedULL;
  std::size_t exact_failure_limit = 6000;  // rows; above this a failure remainder is reported from the modular image
};

struct ProofResult {
  bool member = false;
  Certificate cert;
  SExpr remainder;  // nonzero on failure
  bool remainder_exact = true;
  int depth = -1;
  std::size_t frontier_rows = 0;
  std::size_t zero_rows = 0;
  std::size_t exact_rows = 0;
  std::string log;
};

// Decides h in I_{m,cap} and returns a verified certificate on success.
ProofResult prove_membership(int m, const SExpr& h, const ProverOptions& opt);

}  // namespace cylproof
