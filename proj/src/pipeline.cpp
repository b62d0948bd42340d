#include "cylproof/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cylproof/exprparse.hpp"
#include "cylproof/qseries.hpp"

namespace cylproof {

namespace {

struct StoredRow {
  Profile profile;
  const char* text;
};

// Claims version 1. Rows covered by the general formula.
const std::vector<StoredRow> kClaims11 = {
    {{8, 0, 0}, "S((1,1,1)|(1,1,1))"},
    {{7, 1, 0}, "S((0,1,1)|(1,1,1))"},
    {{7, 0, 1}, "S((1,1,1)|(0,1,1)) - q (1 - z) S((2,1,1)|(1,1,1))"},
    {{6, 2, 0}, "S((0,0,1)|(1,1,1))"},
    {{6, 1, 1}, "S((0,1,1)|(0,1,1)) - q S((1,1,1)|(1,1,1))"},
    {{6, 0, 2}, "S((1,1,1)|(0,0,1)) - q (1 - z) S((2,1,1)|(0,1,1))"},
    {{5, 3, 0}, "S((0,0,0)|(1,1,1))"},
    {{5, 2, 1}, "S((0,0,1)|(0,1,1)) - q S((0,1,1)|(1,1,1))"},
    {{5, 1, 2}, "S((0,1,1)|(0,0,1)) - q S((1,1,1)|(0,1,1))"},
    {{5, 0, 3}, "S((1,1,1)|(0,0,0)) - q (1 - z) S((2,1,1)|(0,0,1))"},
    {{4, 3, 1}, "S((0,0,0)|(0,1,1)) - q S((0,0,1)|(1,1,1))"},
    {{4, 2, 2}, "S((0,0,1)|(0,0,1)) - q S((0,1,1)|(0,1,1))"},
    {{4, 1, 3}, "S((0,1,1)|(0,0,0)) - q S((1,1,1)|(0,0,1))"},
    {{3, 3, 2}, "S((0,0,0)|(0,0,1)) - q S((0,0,1)|(0,1,1))"},
};

const std::vector<StoredRow> kUnder11 = {
    {{4, 4, 0}, "S((1,0,0)|(0,1,1)) - q S((1,0,1)|(1,1,1)) + q z S((2,1,1)|(0,0,0))"},
};

const std::vector<StoredRow> kClaims13 = {
    {{10, 0, 0}, "S((1,1,1)|(1,1,1))"},
    {{9, 1, 0}, "S((0,1,1)|(1,1,1))"},
    {{9, 0, 1}, "S((1,1,1)|(0,1,1)) - q (1 - z) S((2,1,1)|(1,1,1))"},
    {{8, 2, 0}, "S((0,0,1)|(1,1,1))"},
    {{8, 1, 1}, "S((0,1,1)|(0,1,1)) - q S((1,1,1)|(1,1,1))"},
    {{8, 0, 2}, "S((1,1,1)|(0,0,1)) - q (1 - z) S((2,1,1)|(0,1,1))"},
    {{7, 3, 0}, "S((0,0,0)|(1,1,1))"},
    {{7, 2, 1}, "S((0,0,1)|(0,1,1)) - q S((0,1,1)|(1,1,1))"},
    {{7, 1, 2}, "S((0,1,1)|(0,0,1)) - q S((1,1,1)|(0,1,1))"},
    {{7, 0, 3}, "S((1,1,1)|(0,0,0)) - q (1 - z) S((2,1,1)|(0,0,1))"},
    {{6, 3, 1}, "S((0,0,0)|(0,1,1)) - q S((0,0,1)|(1,1,1))"},
    {{6, 2, 2}, "S((0,0,1)|(0,0,1)) - q S((0,1,1)|(0,1,1))"},
    {{6, 1, 3}, "S((0,1,1)|(0,0,0)) - q S((1,1,1)|(0,0,1))"},
    {{5, 3, 2}, "S((0,0,0)|(0,0,1)) - q S((0,0,1)|(0,1,1))"},
    {{5, 2, 3}, "S((0,0,1)|(0,0,0)) - q S((0,1,1)|(0,0,1))"},
    {{4, 3, 3}, "S((0,0,0)|(0,0,0)) - q S((0,0,1)|(0,0,1))"},
};

const std::vector<StoredRow> kUnder13 = {
    {{6, 4, 0},
     "S((-1,0,0)|(1,1,1)) - S((0,0,1)|(0,1,1)) + q S((0,1,1)|(1,1,1))"
     " + (1 - z) S((1,0,0)|(0,1,1)) - q (1 - z) S((1,0,1)|(1,1,1))"},
    {{5, 5, 0},
     "S((-2,0,0)|(1,1,1)) - S((-1,0,1)|(0,1,1)) + q S((-1,1,1)|(1,1,1))"
     " + (1 - z/q - z) S((0,0,0)|(0,1,1)) - (q - z - q z) S((0,0,1)|(1,1,1))"
     " - q (1 - z) z S((1,0,0)|(1,1,1)) - (1 - z) S((1,0,1)|(0,0,1))"
     " + q (1 - z) S((1,1,1)|(0,1,1)) + (1 - z) (1 - q z) S((2,0,0)|(0,0,1))"
     " - q (1 - z) (1 - q z) S((2,0,1)|(0,1,1))"},
    {{5, 4, 1},
     "S((-1,0,0)|(0,1,1)) - q S((-1,0,1)|(1,1,1)) - z S((0,0,0)|(1,1,1))"
     " - S((0,0,1)|(0,0,1)) + q S((0,1,1)|(0,1,1)) + (1 - z) S((1,0,0)|(0,0,1))"
     " - q (1 - z) S((1,0,1)|(0,1,1))"},
    {{4, 4, 2},
     "S((-1,0,0)|(0,0,1)) - q S((-1,0,1)|(0,1,1)) - z S((0,0,0)|(0,1,1))"
     " - S((0,0,1)|(0,0,0)) + q z S((0,0,1)|(1,1,1)) + q S((0,1,1)|(0,0,1))"
     " + (1 - z) S((1,0,0)|(0,0,0)) - q z (1 - z) S((1,0,0)|(1,1,1))"
     " - q (1 - z) S((1,0,1)|(0,0,1))"},
    {{5, 1, 4},
     "S((-1,0,1)|(0,0,0)) - q S((-1,1,1)|(0,0,1)) - S((0,0,0)|(0,0,0))"
     " + (1 - z) S((0,0,0)|(0,0,1)) - (1 - q) S((0,0,1)|(0,0,1))"
     " - q (1 - z) S((0,0,1)|(0,1,1)) + q S((0,1,1)|(0,1,1))"
     " + (1 - z) S((1,0,0)|(0,0,1)) - q (1 - z) z S((1,0,0)|(0,1,1))"
     " - (1 - z) S((1,0,1)|(0,0,0)) - q (1 - z) S((1,0,1)|(0,1,1))"
     " + q^2 (1 - z) z S((1,0,1)|(1,1,1)) + (1 - z) S((1,1,1)|(0,0,0))"
     " + q (1 - z) S((1,1,1)|(0,0,1)) + (1 - z) (1 - q z) S((2,0,0)|(0,0,0))"
     " - q^2 z (1 - z) (1 - q z) S((2,0,0)|(1,1,1)) - (1 - z) (1 - q z) S((2,0,1)|(0,0,0))"
     " - q (1 - z) (1 - q z) S((2,0,1)|(0,0,1)) - q^2 z (1 - z) S((2,1,1)|(0,0,1))"},
    {{6, 0, 4},
     "S((0,0,1)|(0,0,0)) - q S((0,1,1)|(0,0,1)) - S((1,0,0)|(0,0,0))"
     " + (1 - q z) S((1,0,0)|(0,0,1)) - (1 - q) S((1,0,1)|(0,0,1))"
     " - q (1 - q z) S((1,0,1)|(0,1,1)) + q S((1,1,1)|(0,1,1))"
     " + (1 - q z) S((2,0,0)|(0,0,1)) - q^2 z (1 - q z) S((2,0,0)|(0,1,1))"
     " - (1 - q z) S((2,0,1)|(0,0,0)) - q (1 - q z) S((2,0,1)|(0,1,1))"
     " + q^3 z (1 - q z) S((2,0,1)|(1,1,1)) + S((2,1,1)|(0,0,0))"
     " + q (1 - q z) S((2,1,1)|(0,0,1)) + (1 - q z) (1 - q^2 z) S((3,0,0)|(0,0,0))"
     " - q^3 z (1 - q z) (1 - q^2 z) S((3,0,0)|(1,1,1)) - (1 - q z) (1 - q^2 z) S((3,0,1)|(0,0,0))"
     " - q (1 - q z) (1 - q^2 z) S((3,0,1)|(0,0,1)) - q^3 z (1 - q z) S((3,1,1)|(0,0,1))"},
};

const std::vector<RecoveryStep> kPlan13 = {
    {{7, 3, 0}, {6, 4, 0}}, {{6, 4, 0}, {5, 5, 0}}, {{6, 3, 1}, {5, 4, 1}},
    {{5, 3, 2}, {4, 4, 2}}, {{5, 2, 3}, {5, 1, 4}}, {{6, 0, 4}, {6, 0, 4}},
};

std::map<Profile, SExpr> load_rows(const std::vector<StoredRow>& rows, int m) {
  std::map<Profile, SExpr> out;
  for (const auto& r : rows) out[r.profile] = parse_symbolic(r.text, m).to_sexpr(m);
  return out;
}

PolyQZ unit_inverse(const PolyQZ& u) {
  const auto& [e, c] = u.terms().front();
  return PolyQZ::monomial(c, -e.q, -e.z);
}

}  // namespace

const SExpr& ClaimTable::at(const Profile& c) const {
  auto it = claims.find(cyclic_normalize(c));
  if (it == claims.end()) throw std::out_of_range("no claim for profile " + profile_to_string(cyclic_normalize(c)));
  return it->second;
}

std::vector<Profile> profiles_for(int m) {
  if (m < 3) throw std::invalid_argument("profiles_for: modulus below 3");
  return essentially_unique_profiles(3, m - 3);
}

bool under_the_line(const Profile& c, int m) {
  const Profile n = cyclic_normalize(c);
  const int k = family_k(m);
  return n[1] > k - 1 || n[2] > k - 1;
}

SExpr conjectured_claim(const Profile& c, int m) {
  const Profile p = cyclic_normalize(c);
  if (p.size() != 3 || level(p) != m - 3) throw std::invalid_argument("conjectured_claim: profile does not match the modulus");
  if (under_the_line(p, m)) throw std::invalid_argument("conjectured_claim: profile is under the line");
  const int n = family_k(m) - 1;
  const int c2 = p[1];
  const int c3 = p[2];
  SExpr out(m);
  if (c3 == 0) {
    out.add(make_sindex(m, e_vec(n, c2), e_vec(n, 0)), PolyQZ(1));
  } else if (c2 == 0) {
    out.add(make_sindex(m, e_vec(n, 0), e_vec(n, c3)), PolyQZ(1));
    out.add(make_sindex(m, vec_add(e_vec(n, 0), delta_vec(n, 1)), e_vec(n, c3 - 1)),
            PolyQZ::monomial(-1, 1, 0) + PolyQZ::monomial(1, 1, 1));
  } else {
    out.add(make_sindex(m, e_vec(n, c2), e_vec(n, c3)), PolyQZ(1));
    out.add(make_sindex(m, e_vec(n, c2 - 1), e_vec(n, c3 - 1)), PolyQZ::monomial(-1, 1, 0));
  }
  return out;
}

ClaimTable conjectured_claims(int m) {
  ClaimTable t;
  t.m = m;
  for (const auto& p : profiles_for(m)) {
    if (!under_the_line(p, m)) t.claims[p] = conjectured_claim(p, m);
  }
  return t;
}

ClaimTable stored_claims(int m) {
  ClaimTable t;
  t.m = m;
  if (m == 11) {
    t.claims = load_rows(kClaims11, m);
  } else if (m == 13) {
    t.claims = load_rows(kClaims13, m);
  } else {
    throw std::invalid_argument("stored_claims: no stored data for modulus " + std::to_string(m));
  }
  return t;
}

std::map<Profile, SExpr> stored_under_line(int m) {
  if (m == 11) return load_rows(kUnder11, m);
  if (m == 13) return load_rows(kUnder13, m);
  throw std::invalid_argument("stored_under_line: no stored data for modulus " + std::to_string(m));
}

std::vector<RecoveryStep> recovery_plan(int m) {
  if (m == 13) return kPlan13;
  std::vector<RecoveryStep> plan;
  for (const auto& p : profiles_for(m)) {
    if (under_the_line(p, m)) plan.push_back({p, p});
  }
  return plan;
}

namespace {

// Solves the equation of step.equation for step.unknown; nullopt if another
// label is still missing.
std::optional<SExpr> solve_step(const RecoveryStep& step, const ClaimTable& t) {
  const Profile unknown = cyclic_normalize(step.unknown);
  SExpr rest(t.m);
  std::optional<HTerm> target;
  for (const auto& term : cw_equation(step.equation)) {
    if (term.label.profile == unknown) {
      if (target) {
        throw std::runtime_error("recovery: " + profile_to_string(unknown) + " appears more than once in the equation of " +
                                 profile_to_string(step.equation));
      }
      target = term;
      continue;
    }
    if (!t.contains(term.label.profile)) return std::nullopt;
    rest += term.coeff * z_shift(t.at(term.label.profile), term.label.shift);
  }
  if (!target) {
    throw std::runtime_error("recovery: " + profile_to_string(unknown) + " does not occur in the equation of " +
                             profile_to_string(step.equation));
  }
  if (!target->coeff.is_unit()) {
    throw std::runtime_error("recovery: coefficient of " + profile_to_string(unknown) + " is not invertible");
  }
  // coeff * U(z q^s) + rest = 0.
  SExpr shifted = (-unit_inverse(target->coeff)) * rest;
  return z_shift(shifted, -target->label.shift);
}

}  // namespace

ClaimTable recover_under_line(const ClaimTable& partial, const std::vector<RecoveryStep>& plan,
                              std::vector<RecoveryStep>* order_used) {
  ClaimTable t = partial;
  std::vector<bool> done(plan.size(), false);
  std::size_t remaining = plan.size();
  while (remaining > 0) {
    bool progressed = false;
    for (std::size_t i = 0; i < plan.size(); ++i) {
      if (done[i]) continue;
      auto solved = solve_step(plan[i], t);
      if (!solved) continue;
      t.claims[cyclic_normalize(plan[i].unknown)] = std::move(*solved);
      if (order_used) order_used->push_back(plan[i]);
      done[i] = true;
      --remaining;
      progressed = true;
      break;
    }
    if (!progressed) {
      std::string names;
      for (std::size_t i = 0; i < plan.size(); ++i) {
        if (!done[i]) names += " " + profile_to_string(plan[i].unknown);
      }
      throw std::runtime_error("recovery: no step can be carried out; still missing" + names);
    }
  }
  return t;
}

ClaimTable full_claims(int m) {
  ClaimTable base = (m == 11 || m == 13) ? stored_claims(m) : conjectured_claims(m);
  return recover_under_line(base, recovery_plan(m));
}

SExpr translate(const Profile& c, const ClaimTable& claims) {
  SExpr out(claims.m);
  for (const auto& term : cw_equation(c)) {
    if (!claims.contains(term.label.profile)) {
      throw std::out_of_range("translate: no claim for profile " + profile_to_string(term.label.profile));
    }
    out += term.coeff * z_shift(claims.at(term.label.profile), term.label.shift);
  }
  return out;
}

std::vector<InitCheck> check_initial_conditions(const ClaimTable& claims, int Q) {
  std::vector<InitCheck> out;
  SEvaluator ev;
  const TruncSeries euler_inv = reciprocal_poch(Q, Q);
  for (const auto& [p, h] : claims.claims) {
    InitCheck r;
    r.profile = p;
    TruncSeries at_q0 = ev.eval(h, 0, TruncSeries::kExactZ);
    auto terms = at_q0.terms();
    r.q_zero_ok = terms.size() == 1 && std::get<0>(terms[0]) == 0 && std::get<1>(terms[0]) == 0 && std::get<2>(terms[0]) == 1;
    if (!r.q_zero_ok) r.detail += "H(z,0) = " + at_q0.to_string() + "; ";
    TruncSeries at_z0 = ev.eval(h, Q, 0);
    TruncSeries z0(Q, 0);
    bool negative_z = false;
    for (const auto& [qe, ze, c] : at_z0.terms()) {
      if (ze < 0) negative_z = true;
      if (ze == 0) z0.add_term(qe, 0, c);
    }
    TruncSeries want(Q, 0);
    for (const auto& [qe, ze, c] : euler_inv.terms()) want.add_term(qe, ze, c);
    r.z_zero_ok = !negative_z && z0 == want;
    if (!r.z_zero_ok) {
      r.detail += negative_z ? "negative z-powers at z = 0; " : "H(0,q) differs at " + first_difference(z0, want, Q, 0);
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Campaigns

std::string certificate_file_name(int m, const Profile& c) {
  const bool wide = std::any_of(c.begin(), c.end(), [](int x) { return x > 9; });
  std::string digits;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (wide && i > 0) digits += "_";
    digits += std::to_string(c[i]);
  }
  return "M" + std::to_string(m) + "RecH" + digits + ".txt";
}

bool CampaignReport::success() const {
  return std::all_of(entries.begin(), entries.end(), [](const CampaignEntry& e) { return e.status != "failed"; });
}

int CampaignReport::nontrivial() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const CampaignEntry& e) { return e.status != "trivial"; }));
}

nlohmann::json CampaignReport::to_json(bool with_time) const {
  nlohmann::json j;
  j["modulus"] = m;
  j["cap"] = cap;
  j["profiles"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json p;
    p["profile"] = profile_to_string(e.profile);
    p["status"] = e.status;
    p["certificate_file"] = e.certificate_file;
    p["max_index_magnitude"] = e.max_index_magnitude;
    if (with_time) p["wall_time"] = e.wall_time;
    if (e.status == "failed") p["remainder_terms"] = e.remainder.size();
    j["profiles"].push_back(std::move(p));
  }
  j["nontrivial"] = nontrivial();
  j["success"] = success();
  return j;
}

CampaignReport prove_modulus(int m, const CampaignOptions& opt) {
  const ClaimTable claims = full_claims(m);
  std::vector<Profile> todo;
  for (const auto& p : profiles_for(m)) {
    if (!opt.only || cyclic_normalize(*opt.only) == p) todo.push_back(p);
  }
  if (opt.only && todo.empty()) throw std::invalid_argument("prove_modulus: profile does not belong to the modulus");

  CampaignReport report;
  report.m = m;
  report.cap = opt.cap;
  report.entries.resize(todo.size());
  ProverOptions popt = opt.prover;
  popt.cap = opt.cap;
  popt.max_depth = opt.max_depth;
  if (!opt.output_dir.empty()) std::filesystem::create_directories(opt.output_dir);

  std::atomic<std::size_t> next{0};
  std::mutex progress_mu;
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      const auto t0 = std::chrono::steady_clock::now();
      CampaignEntry& e = report.entries[i];
      e.profile = todo[i];
      SExpr h = translate(todo[i], claims);
      if (h.empty()) {
        e.status = "trivial";
      } else {
        ProofResult r = prove_membership(m, h, popt);
        e.log = r.log;
        if (r.member) {
          e.status = "proved";
          e.cert = std::move(r.cert);
          e.cert.target = todo[i];
          e.max_index_magnitude = e.cert.max_index_magnitude();
          if (!opt.output_dir.empty()) {
            e.certificate_file = certificate_file_name(m, todo[i]);
            std::ofstream(std::filesystem::path(opt.output_dir) / e.certificate_file) << e.cert.to_text();
          }
        } else {
          e.status = "failed";
          e.remainder = std::move(r.remainder);
        }
      }
      e.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (opt.progress) {
        std::lock_guard<std::mutex> lock(progress_mu);
        std::string line = "H" + profile_to_string(e.profile) + " " + e.status;
        if (e.status == "proved") {
          line += " (" + std::to_string(e.cert.entries.size()) + " relations, max index " + std::to_string(e.max_index_magnitude) + ")";
        }
        if (opt.record_time) line += " " + std::to_string(e.wall_time) + "s";
        opt.progress(line);
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(opt.threads, static_cast<int>(todo.size())));
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return report;
}

}  // namespace cylproof
