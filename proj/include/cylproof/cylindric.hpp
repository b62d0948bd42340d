#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cylproof/bigint.hpp"
#include "cylproof/polyqz.hpp"
#include "cylproof/series.hpp"

namespace cylproof {

// Composition (c_1, ..., c_r) of non-negative integers.
using Profile = std::vector<int>;

int level(const Profile& c);
// m = r + |c|.
int modulus_of(const Profile& c);
// Lexicographically greatest rotation.
Profile cyclic_normalize(const Profile& c);
// All normalized profiles with r parts and the given level, in decreasing lexicographic order.
std::vector<Profile> essentially_unique_profiles(int r, int level);
std::string profile_to_string(const Profile& c);  // "(c1,c2,c3)"
// Parses "c1,c2,c3"; throws std::invalid_argument.
Profile parse_profile(const std::string& text);

// Indices (1-based) of the nonzero parts.
std::vector<int> nonzero_indices(const Profile& c);
// c(J) for a non-empty J (1-based indices) contained in the nonzero indices;
// index 0 wraps to r. Throws std::invalid_argument otherwise.
Profile c_of_J(const Profile& c, const std::vector<int>& J);

struct CylPartition {
  Profile profile;
  std::vector<std::vector<int>> components;  // each weakly decreasing, positive parts
};

bool is_cylindric(const CylPartition& p);

// F_c(1, q) from the triple product formula, to order Q.
TruncSeries borodin_product(const Profile& c, int Q);

// Joint distribution of (largest part, total) over cylindric partitions of profile c.
struct OracleTable {
  Profile profile;
  int max_total = 0;
  std::map<std::pair<int, int>, BigInt> counts;  // (max_part, total) -> count

  // F_c(z, q) = sum count z^max_part q^total, exact in z, to order max_total.
  TruncSeries as_series() const;
  nlohmann::json to_json() const;
};

// Largest max_total accepted by enumerate_oracle.
constexpr int kOracleMaxTotal = 18;

// Exhaustive enumeration; throws std::invalid_argument above kOracleMaxTotal.
OracleTable enumerate_oracle(const Profile& c, int max_total);

// H = (zq;q)_inf / (q;q)_inf * F and its inverse conversion, to the order of the input.
TruncSeries h_from_f(const TruncSeries& f);
TruncSeries f_from_h(const TruncSeries& h);

// H_c(z q^shift, q) for a normalized profile.
struct HLabel {
  Profile profile;
  int shift = 0;
  friend bool operator==(const HLabel&, const HLabel&) = default;
};

struct HTerm {
  PolyQZ coeff;
  HLabel label;
};

// The Corteel-Welsh equation for H_c written as sum coeff * H_label = 0: the first
// term is H_c itself with coefficient 1, followed by one term per non-empty
// J of the nonzero indices with coefficient -(-1)^{|J|-1} (zq;q)_{|J|-1} and shift |J|.
std::vector<HTerm> cw_equation(const Profile& c);

}  // namespace cylproof
