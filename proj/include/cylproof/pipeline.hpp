#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cylproof/cylindric.hpp"
#include "cylproof/prover.hpp"
#include "cylproof/ssums.hpp"

namespace cylproof {

// Claimed S-expansions of H_c(z, q), keyed by normalized profile.
struct ClaimTable {
  int m = 0;
  std::map<Profile, SExpr> claims;

  bool contains(const Profile& c) const { return claims.count(cyclic_normalize(c)) != 0; }
  const SExpr& at(const Profile& c) const;
};

// The three-part profiles with |c| = m - 3, normalized, in decreasing lexicographic order.
std::vector<Profile> profiles_for(int m);

// Profiles outside the reach of the general formula: c2 or c3 exceeds k - 1.
bool under_the_line(const Profile& c, int m);

// The general formula for a normalized profile that is not under the line;
// the shift written as delta_0 in the formula is read as delta_1.
SExpr conjectured_claim(const Profile& c, int m);
// conjectured_claim for every profile not under the line.
ClaimTable conjectured_claims(int m);

// Embedded claim data for m = 11 and m = 13: the rows covered by the general
// formula, as stored text. Throws std::invalid_argument for other moduli.
ClaimTable stored_claims(int m);
// Embedded expansions for the under-the-line profiles (m = 11, 13).
std::map<Profile, SExpr> stored_under_line(int m);

// One recovery step: solve the equation of `equation` for `unknown`.
struct RecoveryStep {
  Profile equation;
  Profile unknown;
  friend bool operator==(const RecoveryStep&, const RecoveryStep&) = default;
};

// Designated recovery steps. m = 13 uses a fixed list; other moduli solve
// each under-the-line profile from its own equation.
std::vector<RecoveryStep> recovery_plan(int m);

// Carries out the steps, each as soon as its equation has only its unknown
// missing (listed order first). Throws std::runtime_error when a step cannot
// be carried out. `order_used` receives the order actually taken.
ClaimTable recover_under_line(const ClaimTable& partial, const std::vector<RecoveryStep>& plan,
                              std::vector<RecoveryStep>* order_used = nullptr);

// Complete claim table: stored data for 11 and 13, the general formula otherwise,
// followed by recovery.
ClaimTable full_claims(int m);

// The equation of c with every H replaced by its claim; empty iff it trivializes.
// Throws std::out_of_range naming the missing profile.
SExpr translate(const Profile& c, const ClaimTable& claims);

struct InitCheck {
  Profile profile;
  bool z_zero_ok = false;  // H_c(0, q) = 1/(q;q)_inf
  bool q_zero_ok = false;  // H_c(z, 0) = 1
  std::string detail;
};
std::vector<InitCheck> check_initial_conditions(const ClaimTable& claims, int Q);

struct CampaignOptions {
  int cap = 6;
  int max_depth = 6;
  int threads = 1;
  std::optional<Profile> only;   // a single profile
  std::string output_dir;        // certificate files are written here when non-empty
  bool record_time = true;
  ProverOptions prover;          // cap and depth are copied in from above
  std::function<void(const std::string&)> progress;  // one line per finished profile
};

struct CampaignEntry {
  Profile profile;
  std::string status;  // trivial | proved | failed
  std::string certificate_file;
  int max_index_magnitude = 0;
  double wall_time = 0;
  Certificate cert;
  SExpr remainder;
  std::string log;
};

struct CampaignReport {
  int m = 0;
  int cap = 0;
  std::vector<CampaignEntry> entries;  // in profile order
  bool success() const;
  int nontrivial() const;
  nlohmann::json to_json(bool with_time) const;
};

CampaignReport prove_modulus(int m, const CampaignOptions& opt);

// Certificate file name for a profile: M<m>RecH<digits>.txt, digits joined with '_' when any part exceeds 9.
std::string certificate_file_name(int m, const Profile& c);

}  // namespace cylproof
