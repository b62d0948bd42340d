// Command-line front end: series expansion, oracle enumeration, identity
// suites, proof campaigns and certificate checking.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cylproof/cylindric.hpp"
#include "cylproof/identities.hpp"
#include "cylproof/pipeline.hpp"
#include "cylproof/prover.hpp"
#include "cylproof/ssums.hpp"

using namespace cylproof;

namespace {

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("malformed integer list '" + text + "'");
    }
    if (used != item.size()) throw CLI::ValidationError("malformed integer list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("empty integer list");
  return out;
}

Profile parse_profile_arg(const std::string& text) {
  std::vector<int> v = parse_ints(text);
  for (int x : v) {
    if (x < 0) throw CLI::ValidationError("profile entries must be nonnegative");
  }
  return v;
}

nlohmann::json series_json(const TruncSeries& s) {
  nlohmann::json j;
  j["q_order"] = s.q_order();
  if (!s.z_exact()) j["z_order"] = s.z_order();
  j["terms"] = nlohmann::json::array();
  for (const auto& [qe, ze, c] : s.terms()) j["terms"].push_back({qe, ze, c.get_str()});
  return j;
}

struct ExpandArgs {
  std::string sum, rho, sigma, product;
  int order = 10;
  int zmax = TruncSeries::kExactZ;
  bool json = false;
};

int run_expand(const ExpandArgs& a) {
  if (a.sum.empty() == a.product.empty()) throw CLI::ValidationError("give exactly one of --sum and --product");
  if (a.order < 0) throw CLI::ValidationError("--order must be nonnegative");
  TruncSeries s;
  if (!a.sum.empty()) {
    if (a.sum.size() < 2 || a.sum[0] != 'S') throw CLI::ValidationError("--sum expects S<m>, e.g. S11");
    int m = 0;
    try {
      m = std::stoi(a.sum.substr(1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--sum expects S<m>, e.g. S11");
    }
    if (m < 5) throw CLI::ValidationError("--sum modulus must be at least 5");
    if (a.rho.empty() || a.sigma.empty()) throw CLI::ValidationError("--sum needs --rho and --sigma");
    SIndex idx;
    try {
      idx = make_sindex(m, parse_ints(a.rho), parse_ints(a.sigma));
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError(e.what());
    }
    s = eval_S(idx, a.order, a.zmax);
  } else {
    try {
      s = product_from_spec(a.product, a.order);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError(e.what());
    }
  }
  if (a.json) {
    std::cout << series_json(s).dump(2) << "\n";
  } else {
    std::cout << s.to_string() << "\n";
  }
  return 0;
}

int run_enumerate(const std::string& profile, int max_total) {
  const Profile c = parse_profile_arg(profile);
  if (max_total < 0) throw CLI::ValidationError("--max-total must be nonnegative");
  if (max_total > kOracleMaxTotal) {
    throw CLI::ValidationError("--max-total " + std::to_string(max_total) + " exceeds the exhaustive oracle bound " +
                               std::to_string(kOracleMaxTotal) + "; use a smaller total");
  }
  const OracleTable t = enumerate_oracle(c, max_total);
  nlohmann::json j = t.to_json();
  const TruncSeries f1 = t.as_series().at_z_one();
  const TruncSeries b = borodin_product(c, max_total);
  const bool ok = agree(f1, b, max_total);
  j["borodin_check"] = {{"order", max_total}, {"agrees", ok}};
  if (!ok) j["borodin_check"]["first_difference"] = first_difference(f1, b, max_total);
  std::cout << j.dump(2) << "\n";
  return ok ? 0 : 1;
}

int run_verify(const std::string& suite, int order, int threads, bool timing) {
  const auto results = verify_suite(suite, order, threads);
  bool ok = true;
  int passed = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : (r.fatal ? "FAIL " : "FAIL (non-fatal) ")) << r.id << " order " << r.order;
    if (timing) std::cout << " " << r.seconds << "s";
    if (!r.detail.empty()) std::cout << " [" << r.detail << "]";
    std::cout << "\n";
    if (r.pass) ++passed;
    if (!r.pass && r.fatal) ok = false;
  }
  std::cout << passed << "/" << results.size() << " passed\n";
  return ok ? 0 : 1;
}

struct ProveArgs {
  int modulus = 11;
  int cap = 6;
  int max_depth = 6;
  std::string profile;
  int threads = 1;
  std::string output_dir = ".";
  bool deterministic = false;
  bool verbose = false;
};

int run_prove(const ProveArgs& a) {
  if (a.modulus < 5) throw CLI::ValidationError("--modulus must be at least 5");
  if (a.cap < 0) throw CLI::ValidationError("--cap must be nonnegative");
  CampaignOptions opt;
  opt.cap = a.cap;
  opt.max_depth = a.max_depth;
  opt.threads = a.threads;
  opt.output_dir = a.output_dir;
  opt.record_time = !a.deterministic;
  if (!a.profile.empty()) {
    const Profile c = parse_profile_arg(a.profile);
    if (level(c) != a.modulus - 3 || c.size() != 3) {
      throw CLI::ValidationError("--profile must have three parts summing to modulus - 3");
    }
    opt.only = c;
  }
  opt.progress = [](const std::string& line) { std::cerr << line << std::endl; };
  const CampaignReport rep = prove_modulus(a.modulus, opt);
  const std::string report_name = "M" + std::to_string(a.modulus) + "_report.json";
  std::ofstream(std::filesystem::path(a.output_dir) / report_name) << rep.to_json(!a.deterministic).dump(2) << "\n";
  for (const auto& e : rep.entries) {
    std::cout << "H" << profile_to_string(e.profile) << " " << e.status;
    if (!e.certificate_file.empty()) std::cout << " " << e.certificate_file;
    std::cout << "\n";
    if (e.status == "proved" && (a.verbose || opt.only)) std::cout << e.cert.to_text();
    if (e.status == "proved" && a.verbose) std::cout << e.log;
    if (e.status == "failed") {
      std::cout << "remainder (" << e.remainder.size() << " terms):\n" << e.remainder.to_string() << "\n";
      if (a.verbose) std::cout << e.log << "\n";
    }
  }
  std::cout << "nontrivial " << rep.nontrivial() << ", " << (rep.success() ? "success" : "failure") << "\n";
  std::cout << "report " << report_name << "\n";
  return rep.success() ? 0 : 1;
}

int run_check_cert(const std::string& file, int modulus, const std::string& profile) {
  std::ifstream in(file);
  if (!in) throw CLI::ValidationError("cannot read " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  Certificate cert;
  try {
    cert = Certificate::parse(buf.str());
  } catch (const std::runtime_error& e) {
    std::cout << "FAIL parse: " << e.what() << "\n";
    return 1;
  }
  if (cert.m != modulus) {
    std::cout << "FAIL certificate modulus " << cert.m << " does not match " << modulus << "\n";
    return 1;
  }
  const Profile c = cyclic_normalize(parse_profile_arg(profile));
  if (!cert.target.empty() && cyclic_normalize(cert.target) != c) {
    std::cout << "FAIL certificate target " << profile_to_string(cert.target) << " does not match " << profile_to_string(c) << "\n";
    return 1;
  }
  const SExpr h = translate(c, full_claims(modulus));
  const bool ok = verify_certificate(cert, h);
  std::cout << (ok ? "PASS " : "FAIL ") << file << " H" << profile_to_string(c) << " " << cert.entries.size() << " relations\n";
  return ok ? 0 : 1;
}

int run_report(int modulus, int order) {
  std::vector<RecoveryStep> used;
  const ClaimTable base = (modulus == 11 || modulus == 13) ? stored_claims(modulus) : conjectured_claims(modulus);
  const ClaimTable claims = recover_under_line(base, recovery_plan(modulus), &used);
  std::cout << "modulus " << modulus << ", " << claims.claims.size() << " claims\n";
  for (const auto& s : used) {
    std::cout << "recovered H" << profile_to_string(s.unknown) << " from the equation of H" << profile_to_string(s.equation) << "\n";
  }
  bool ok = true;
  for (const auto& r : check_initial_conditions(claims, order)) {
    const bool good = r.q_zero_ok && r.z_zero_ok;
    ok = ok && good;
    std::cout << "initial conditions H" << profile_to_string(r.profile) << (good ? " ok" : " FAIL " + r.detail) << "\n";
  }
  int nontrivial = 0;
  for (const auto& p : profiles_for(modulus)) {
    const SExpr h = translate(p, claims);
    if (!h.empty()) ++nontrivial;
    std::cout << "equation H" << profile_to_string(p) << (h.empty() ? " trivial" : " " + std::to_string(h.size()) + " S-terms") << "\n";
  }
  std::cout << "nontrivial " << nontrivial << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cylproof: q-series identities for cylindric partitions"};
  app.require_subcommand(1);

  ExpandArgs ea;
  auto* expand = app.add_subcommand("expand", "Expand an S-sum or a product to a given order");
  expand->add_option("--sum", ea.sum, "S-family, e.g. S11");
  expand->add_option("--rho", ea.rho, "comma-separated rho");
  expand->add_option("--sigma", ea.sigma, "comma-separated sigma");
  expand->add_option("--product", ea.product, "product text, e.g. theta:2,3,3@7;euler");
  expand->add_option("--order", ea.order, "q-order");
  expand->add_option("--zmax", ea.zmax, "z-order (default exact)");
  expand->add_flag("--json", ea.json, "JSON output");

  std::string en_profile;
  int en_total = 8;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate cylindric partitions and compare with the product formula");
  enumerate->add_option("--profile", en_profile, "profile c1,c2,...")->required();
  enumerate->add_option("--max-total", en_total, "largest size enumerated");

  std::string suite;
  int v_order = 0;
  int threads = 1;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "Check a suite of sum-product identities");
  verify->add_option("--suite", suite, "classical | mod11 | mod13 | extra")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--order", v_order, "q-order (default per identity)");
  verify->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--timing", timing, "print per-identity times");

  ProveArgs pa;
  auto* prove = app.add_subcommand("prove", "Prove the functional equations for a modulus");
  prove->add_option("--modulus", pa.modulus, "modulus m")->required();
  prove->add_option("--cap", pa.cap, "largest index magnitude of relations");
  prove->add_option("--max-depth", pa.max_depth, "frontier expansion rounds");
  prove->add_option("--profile", pa.profile, "a single profile c1,c2,c3");
  prove->add_option("--threads", pa.threads, "worker threads")->check(CLI::PositiveNumber);
  prove->add_option("--output-dir", pa.output_dir, "directory for certificates and the report");
  prove->add_flag("--deterministic", pa.deterministic, "omit wall times so reruns are byte-identical");
  prove->add_flag("--verbose", pa.verbose, "print certificates and prover logs");

  std::string cc_file, cc_profile;
  int cc_modulus = 11;
  auto* check = app.add_subcommand("check-cert", "Verify a certificate file independently of the prover");
  check->add_option("--file", cc_file, "certificate file")->required();
  check->add_option("--modulus", cc_modulus, "modulus m")->required();
  check->add_option("--profile", cc_profile, "profile c1,c2,c3")->required();

  int r_modulus = 11;
  int r_order = 30;
  auto* report = app.add_subcommand("report", "Claims, recovery order, initial conditions and equation status");
  report->add_option("--modulus", r_modulus, "modulus m")->required();
  report->add_option("--order", r_order, "q-order for the initial-condition check");

  try {
    app.parse(argc, argv);
    if (*expand) return run_expand(ea);
    if (*enumerate) return run_enumerate(en_profile, en_total);
    if (*verify) return run_verify(suite, v_order, threads, timing);
    if (*prove) return run_prove(pa);
    if (*check) return run_check_cert(cc_file, cc_modulus, cc_profile);
    if (*report) return run_report(r_modulus, r_order);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
