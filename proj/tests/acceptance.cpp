// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: cylproof_acceptance [--heavy] [--only N[,N...]]

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cylproof/cylindric.hpp"
#include "cylproof/identities.hpp"
#include "cylproof/pipeline.hpp"
#include "cylproof/prover.hpp"
#include "cylproof/relations.hpp"

using namespace cylproof;

namespace {

struct Outcome {
  bool pass = false;
  bool fatal = true;
  std::string detail;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const ClaimTable& claims(int m) {
  static std::map<int, ClaimTable> tables;
  if (!tables.count(m)) tables[m] = full_claims(m);
  return tables.at(m);
}

Outcome suite_outcome(const std::vector<IdentityResult>& results, bool fatal) {
  Outcome o{true, fatal, ""};
  int passed = 0;
  for (const auto& r : results) {
    if (r.pass) {
      ++passed;
    } else {
      o.pass = false;
      o.detail += " " + r.id + " failed (" + r.detail + ")";
    }
  }
  o.detail = std::to_string(passed) + "/" + std::to_string(results.size()) + " identities" + o.detail;
  return o;
}

Outcome criterion_classical() { return suite_outcome(verify_suite("classical", 0, 1), true); }

Outcome criterion_oracle_triangle() {
  const int Q = 10;
  int profiles = 0;
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; a + b <= 5; ++b)
      for (int c = 0; a + b + c <= 5; ++c) {
        const Profile p{a, b, c};
        const auto f = enumerate_oracle(p, Q).as_series();
        if (!agree(f.at_z_one(), borodin_product(p, Q), Q)) return {false, true, "product mismatch at " + profile_to_string(p)};
        ++profiles;
        if (a + b + c == 0) continue;  // no nonzero index, no recurrence
        TruncSeries rhs(Q);
        const auto idx = nonzero_indices(p);
        for (unsigned mask = 1; mask < (1u << idx.size()); ++mask) {
          std::vector<int> J;
          for (std::size_t i = 0; i < idx.size(); ++i)
            if (mask & (1u << i)) J.push_back(idx[i]);
          const int j = static_cast<int>(J.size());
          PolyQZ geom;
          for (int n = 0; n * j <= Q; ++n) geom += PolyQZ::monomial(1, n * j, n);
          const auto term = TruncSeries::from_poly(geom, Q) * enumerate_oracle(c_of_J(p, J), Q).as_series().z_shift(j);
          if (j % 2) rhs += term;
          else rhs -= term;
        }
        if (!agree(f, rhs, Q)) return {false, true, "recurrence mismatch at " + profile_to_string(p)};
      }
  return {true, true, std::to_string(profiles) + " profiles, order 10"};
}

Outcome criterion_relations() {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int m : {8, 10, 11, 13}) {
    const int n = family_k(m) - 1;
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<int> sup(1, std::max(1, n - 1));
    SEvaluator ev;
    for (RelKind kind : {RelKind::kR1, RelKind::kR2, RelKind::kR3, RelKind::kR4}) {
      int made = 0;
      for (int attempt = 0; made < 200 && attempt < 100000; ++attempt) {
        RelName name;
        name.kind = kind;
        name.i = (kind == RelKind::kR1 || kind == RelKind::kR2) ? sup(rng) : 0;
        name.rho.resize(n);
        name.sigma.resize(n);
        for (auto& x : name.rho) x = entry(rng);
        for (auto& x : name.sigma) x = entry(rng);
        if (!relation_valid(m, name)) continue;
        ++made;
        if (!relation_vanishes(generate(m, name), 25, 6, ev)) return {false, true, "m=" + std::to_string(m) + " " + name.to_string()};
      }
      if (made < 200) return {false, true, "could not draw 200 instances for m=" + std::to_string(m)};
      checked += made;
    }
  }
  return {true, true, std::to_string(checked) + " instances vanish at order 25, z-order 6"};
}

Outcome criterion_table(int m) {
  Outcome o = suite_outcome(verify_suite(m == 11 ? "mod11" : "mod13", 40, 1), true);
  const auto direct = verify_unit_shift_example(m, 40);
  if (!direct.pass) {
    o.pass = false;
    o.detail += "; " + direct.id + " failed (" + direct.detail + ")";
  } else {
    o.detail += "; " + direct.id + " holds";
  }
  return o;
}

Outcome criterion_recovery() {
  int matched = 0;
  for (int m : {11, 13}) {
    std::vector<RecoveryStep> order;
    const ClaimTable full = recover_under_line(stored_claims(m), recovery_plan(m), &order);
    const std::vector<RecoveryStep> want_order =
        m == 11 ? std::vector<RecoveryStep>{{{4, 4, 0}, {4, 4, 0}}}
                : std::vector<RecoveryStep>{{{7, 3, 0}, {6, 4, 0}}, {{6, 3, 1}, {5, 4, 1}}, {{6, 4, 0}, {5, 5, 0}},
                                            {{5, 3, 2}, {4, 4, 2}}, {{5, 2, 3}, {5, 1, 4}}, {{6, 0, 4}, {6, 0, 4}}};
    if (order != want_order) return {false, true, "unexpected recovery order for m=" + std::to_string(m)};
    for (const auto& [c, e] : stored_under_line(m)) {
      if (!(full.at(c) == e)) return {false, true, "m=" + std::to_string(m) + " " + profile_to_string(c) + " differs"};
      ++matched;
    }
  }
  return {matched == 7, true, std::to_string(matched) + " under-the-line expansions equal term for term"};
}

Outcome criterion_initial_conditions() {
  int ok = 0, total = 0;
  std::string bad;
  for (int m : {11, 13}) {
    for (const auto& r : check_initial_conditions(claims(m), 30)) {
      ++total;
      if (r.z_zero_ok && r.q_zero_ok) ++ok;
      else bad += " " + profile_to_string(r.profile) + ": " + r.detail;
    }
  }
  return {ok == total && total == 37, true, std::to_string(ok) + "/" + std::to_string(total) + " claims at order 30" + bad};
}

Certificate stated(const Profile& c, const std::vector<std::pair<std::string, std::string>>& entries) {
  Certificate cert;
  cert.m = 11;
  cert.target = c;
  for (const auto& [name, num] : entries) cert.entries.push_back({parse_relname(name), PolyQZ::parse(num), PolyQZ(1)});
  std::sort(cert.entries.begin(), cert.entries.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return cert;
}

Outcome criterion_worked_certificates() {
  const std::vector<std::pair<Profile, Certificate>> cases = {
      {{7, 1, 0}, stated({7, 1, 0}, {{"R1[{1},{{0,1,1},{1,1,1}}]", "1"}})},
      {{6, 1, 1}, stated({6, 1, 1}, {{"R1[{1},{{0,1,1},{0,1,1}}]", "1"},
                                     {"R1[{1},{{1,1,1},{1,1,1}}]", "-1 + q*z"},
                                     {"R2[{1},{{2,1,1},{-1,1,1}}]", "q*z"}})},
  };
  for (const auto& [c, want] : cases) {
    const SExpr h = translate(c, claims(11));
    const ProofResult res = prove_membership(11, h, ProverOptions{});
    if (!res.member) return {false, true, profile_to_string(c) + " not proved"};
    Certificate got = res.cert;
    got.target = c;
    std::sort(got.entries.begin(), got.entries.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    if (got.to_text() != want.to_text()) return {false, true, profile_to_string(c) + " combination differs:\n" + got.to_text()};
    if (!verify_certificate(want, h)) return {false, true, profile_to_string(c) + " stated combination does not verify"};
  }
  return {true, true, "H(7,1,0): 1 relation, H(6,1,1): 3 relations, both as stated"};
}

// Checks a finished campaign: counts, empty remainders, verification, index bound.
Outcome check_campaign(const CampaignReport& rep, int want_proved, int want_trivial) {
  int proved = 0, trivial = 0, max_index = 0;
  for (const auto& e : rep.entries) {
    if (e.status == "failed") return {false, true, "m=" + std::to_string(rep.m) + " failed at " + profile_to_string(e.profile)};
    if (e.status == "trivial") {
      ++trivial;
      continue;
    }
    ++proved;
    if (!e.remainder.empty()) return {false, true, "nonempty remainder at " + profile_to_string(e.profile)};
    if (!verify_certificate(e.cert, translate(e.profile, claims(rep.m))))
      return {false, true, "certificate for " + profile_to_string(e.profile) + " does not verify"};
    max_index = std::max(max_index, e.cert.max_index_magnitude());
  }
  std::string d = "m=" + std::to_string(rep.m) + " cap " + std::to_string(rep.cap) + ": " + std::to_string(proved) + " proved, " +
                  std::to_string(trivial) + " trivial, max index " + std::to_string(max_index);
  const bool counts_ok = (want_proved < 0 || proved == want_proved) && (want_trivial < 0 || trivial == want_trivial);
  return {rep.success() && counts_ok && max_index <= rep.cap, true, d};
}

Outcome check_golden(int m) {
  const auto dir = std::filesystem::path(CYLPROOF_DATA_DIR) / "certificates" / ("M" + std::to_string(m));
  std::set<Profile> targets;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const Certificate cert = Certificate::parse(read_file(entry.path()));
    if (cert.m != m || !verify_certificate(cert, translate(cert.target, claims(m))))
      return {false, true, entry.path().filename().string() + " does not verify"};
    targets.insert(cyclic_normalize(cert.target));
  }
  std::set<Profile> nontrivial;
  for (const auto& c : profiles_for(m))
    if (!translate(c, claims(m)).empty()) nontrivial.insert(c);
  if (targets != nontrivial) return {false, true, "golden targets differ from the nontrivial equations"};
  return {true, true, std::to_string(targets.size()) + " golden M" + std::to_string(m) + " certificates verify"};
}

Outcome combine(std::vector<Outcome> parts) {
  Outcome o{true, true, ""};
  for (const auto& p : parts) {
    o.pass = o.pass && p.pass;
    o.detail += (o.detail.empty() ? "" : "; ") + p.detail;
  }
  return o;
}

CampaignReport campaign(int m, int cap) {
  CampaignOptions opt;
  opt.cap = cap;
  opt.record_time = false;
  return prove_modulus(m, opt);
}

Outcome criterion_campaign11(bool heavy) {
  (void)heavy;  // the m = 11 campaign takes seconds, so it always runs
  return combine({check_campaign(campaign(7, 4), -1, -1), check_campaign(campaign(8, 4), -1, -1),
                  check_campaign(campaign(11, 6), 10, 5), check_golden(11)});
}

Outcome criterion_campaign13(bool heavy) {
  std::vector<Outcome> parts{check_golden(13)};
  if (heavy) parts.push_back(check_campaign(campaign(13, 6), 12, 10));
  else parts.push_back({true, true, "full m=13 campaign skipped (pass --heavy)"});
  return combine(parts);
}

Outcome criterion_extra() {
  Outcome o = suite_outcome(verify_suite("extra", 60, 1), false);
  return o;
}

Outcome criterion_properties() {
  doctest::Context ctx;
  ctx.setOption("minimal", true);
  ctx.setOption("no-intro", true);
  ctx.setOption("no-version", true);
  const char* patterns =
      "ring axioms*,exact division*,content and primitive*,inversion is an involution,truncation stability*,"
      "Pochhammer cocycle,*Pascal rules*,c(J) examples*,oracle tables are invariant*,*z-shift group action*,"
      "linearity*,randomized relations vanish,row-space preservation*,certificate text round trip*,"
      "certificates from other seeds*";
  ctx.addFilter("test-case", patterns);
  const int rc = ctx.run();
  return {rc == 0, true, rc == 0 ? "randomized property cases pass with fixed seeds" : "property failures above"};
}

}  // namespace

int main(int argc, char** argv) {
  bool heavy = false;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--heavy") {
      heavy = true;
    } else if (a == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
    } else {
      std::cerr << "usage: cylproof_acceptance [--heavy] [--only N[,N...]]\n";
      return 2;
    }
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"classical identities", criterion_classical},
      {"oracle triangle", criterion_oracle_triangle},
      {"relation sanity", criterion_relations},
      {"modulo 11 identities", [] { return criterion_table(11); }},
      {"modulo 13 identities", [] { return criterion_table(13); }},
      {"under-the-line recovery", criterion_recovery},
      {"initial conditions", criterion_initial_conditions},
      {"worked certificates", criterion_worked_certificates},
      {"modulo 11 campaign", [heavy] { return criterion_campaign11(heavy); }},
      {"modulo 13 campaign", [heavy] { return criterion_campaign13(heavy); }},
      {"extra identities", criterion_extra},
      {"property suites", criterion_properties},
  };
  bool all_ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(number)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, true, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* verdict = o.pass ? "PASS" : (o.fatal ? "FAIL" : "FAIL (reported, not fatal)");
    std::printf("criterion %2d %-24s %s  [%.1fs] %s\n", number, criteria[i].first.c_str(), verdict, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass && o.fatal) all_ok = false;
  }
  return all_ok ? 0 : 1;
}
