#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cylproof/exprparse.hpp"
#include "cylproof/identities.hpp"
#include "cylproof/pipeline.hpp"
#include "cylproof/qseries.hpp"

using namespace cylproof;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const ClaimTable& claims(int m) {
  static std::map<int, ClaimTable> tables;
  if (!tables.count(m)) tables[m] = full_claims(m);
  return tables.at(m);
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("profile lists and the line") {
  CHECK(profiles_for(11).size() == 15);
  CHECK(profiles_for(13).size() == 22);
  int under11 = 0, under13 = 0;
  for (const auto& c : profiles_for(11)) under11 += under_the_line(c, 11);
  for (const auto& c : profiles_for(13)) under13 += under_the_line(c, 13);
  CHECK(under11 == 1);
  CHECK(under13 == 6);
  CHECK(under_the_line({4, 4, 0}, 11));
  CHECK_FALSE(under_the_line({7, 1, 0}, 11));
  CHECK(certificate_file_name(11, {6, 1, 1}) == "M11RecH611.txt");
  CHECK(certificate_file_name(13, {10, 0, 0}) == "M13RecH10_0_0.txt");
}

TEST_CASE("translation examples") {
  const auto& t = claims(11);
  CHECK(translate({8, 0, 0}, t).empty());
  CHECK(translate({7, 1, 0}, t) == gen_R1(11, 1, {0, 1, 1}, {1, 1, 1}).body);
  CHECK(translate({7, 0, 1}, t).empty());
  ClaimTable partial = stored_claims(11);
  CHECK_THROWS_AS(translate({4, 4, 0}, partial), std::out_of_range);
}

TEST_CASE("stored rows agree with the general formula") {
  for (int m : {11, 13}) {
    const ClaimTable stored = stored_claims(m);
    const ClaimTable general = conjectured_claims(m);
    CHECK(stored.claims.size() == general.claims.size());
    for (const auto& [c, e] : stored.claims) CHECK_MESSAGE(general.at(c) == e, profile_to_string(c));
  }
}

TEST_CASE("under-the-line recovery reproduces the stored expansions") {
  for (int m : {11, 13}) {
    std::vector<RecoveryStep> order;
    const ClaimTable full = recover_under_line(stored_claims(m), recovery_plan(m), &order);
    if (m == 11) {
      CHECK(order == std::vector<RecoveryStep>{{{4, 4, 0}, {4, 4, 0}}});
    } else {
      // (5,4,1) occurs in the equation of (6,4,0), so it is recovered before (5,5,0).
      const std::vector<RecoveryStep> want_order{{{7, 3, 0}, {6, 4, 0}}, {{6, 3, 1}, {5, 4, 1}}, {{6, 4, 0}, {5, 5, 0}},
                                                 {{5, 3, 2}, {4, 4, 2}}, {{5, 2, 3}, {5, 1, 4}}, {{6, 0, 4}, {6, 0, 4}}};
      CHECK(order == want_order);
    }
    const auto want = stored_under_line(m);
    CHECK(want.size() == (m == 11 ? 1u : 6u));
    for (const auto& [c, e] : want) CHECK_MESSAGE(full.at(c) == e, profile_to_string(c));
    CHECK(full.claims.size() == profiles_for(m).size());
  }
  const auto h640 = stored_under_line(13).at({6, 4, 0});
  CHECK(h640.size() == 5);
  CHECK(h640.coefficient(make_sindex(13, {-1, 0, 0}, {1, 1, 1})) != PolyQZ());
  CHECK_THROWS_AS(recover_under_line(stored_claims(13), {{{5, 3, 2}, {4, 4, 2}}}), std::runtime_error);
}

TEST_CASE("defining equations trivialize") {
  for (int m : {11, 13}) {
    for (const auto& step : recovery_plan(m)) CHECK(translate(step.equation, claims(m)).empty());
  }
}

TEST_CASE("initial conditions") {
  for (int m : {11, 13}) {
    for (const auto& r : check_initial_conditions(claims(m), 30)) {
      CHECK_MESSAGE(r.z_zero_ok, profile_to_string(r.profile) << " " << r.detail);
      CHECK_MESSAGE(r.q_zero_ok, profile_to_string(r.profile) << " " << r.detail);
    }
  }
  ClaimTable perturbed = claims(11);
  perturbed.claims[{8, 0, 0}] += SExpr::term(make_sindex(11, {1, 1, 1}, {1, 1, 1}), PolyQZ::parse("q^2"));
  perturbed.claims[{7, 1, 0}] += SExpr::term(make_sindex(11, {0, 0, 0}, {0, 0, 0}), PolyQZ(1));
  int failures = 0;
  for (const auto& r : check_initial_conditions(perturbed, 30)) failures += !(r.z_zero_ok && r.q_zero_ok);
  CHECK(failures == 2);
  const auto h800 = eval_SExpr(claims(11).at({8, 0, 0}), 30, 0);
  for (int n = 0; n <= 30; ++n) CHECK(h800.coefficient(n, 0) == reciprocal_poch(n, 30).coefficient(n));
}

TEST_CASE("claims match the cylindric partition oracle") {
  const int Q = 11;
  for (int m : {11, 13}) {
    for (const auto& [c, e] : claims(m).claims) {
      const auto h = h_from_f(enumerate_oracle(c, Q).as_series());
      const auto got = eval_SExpr(e, Q, TruncSeries::kExactZ);
      CHECK_MESSAGE(agree(got, h, Q), profile_to_string(c) << " " << first_difference(got, h, Q));
    }
  }
}

TEST_CASE("claims, Borodin products and table products agree at z = 1") {
  const int Q = 20;
  for (int m : {11, 13}) {
    for (const auto& row : sum_product_table(m)) {
      const auto product = product_from_spec(table_product_spec(row, m), Q);
      CHECK(agree(product, borodin_product(row.profile, Q), Q));
      const Profile mirror = cyclic_normalize({row.profile[0], row.profile[2], row.profile[1]});
      CHECK(agree(borodin_product(mirror, Q), product, Q));
      const auto at_one = eval_SExpr(claims(m).at(row.profile), Q, TruncSeries::kExactZ).at_z_one();
      CHECK_MESSAGE(agree(at_one, product, Q), profile_to_string(row.profile));
    }
  }
}

TEST_CASE("the mirrored summand of the (5,2,3) row") {
  const int Q = 30;
  SEvaluator ev;
  const auto& row = sum_product_table(13);
  const auto it = std::find_if(row.begin(), row.end(), [](const SumProductRow& r) { return r.profile == Profile{5, 2, 3}; });
  REQUIRE(it != row.end());
  const auto product = product_from_spec(table_product_spec(*it, 13), Q);
  CHECK(agree(sum_side("q^{r_3}(1-q^{r_2+s_3+1})", 13, Q, ev), product, Q));
  CHECK(agree(sum_side(it->pc, 13, Q, ev), product, Q));
}

TEST_CASE("the (6,0,4) summand against its typeset form") {
  const int Q = 12;
  SEvaluator ev;
  const auto& rows = sum_product_table(13);
  const auto it = std::find_if(rows.begin(), rows.end(), [](const SumProductRow& r) { return r.profile == Profile{6, 0, 4}; });
  REQUIRE(it != rows.end());
  REQUIRE_FALSE(it->printed_pc.empty());
  const auto product = product_from_spec(table_product_spec(*it, 13), Q);
  CHECK(agree(sum_side(it->pc, 13, Q, ev), product, Q));
  const auto typeset = sum_side(it->printed_pc, 13, Q, ev);
  CHECK(agree(typeset, product, 1));
  CHECK(typeset.coefficient(2) != product.coefficient(2));
  const auto claim = eval_SExpr(claims(13).at({6, 0, 4}), Q, TruncSeries::kExactZ).at_z_one();
  CHECK(agree(sum_side(it->pc, 13, Q, ev), claim, Q));
}

TEST_CASE("golden certificates re-verify") {
  for (int m : {11, 13}) {
    const auto dir = std::filesystem::path(CYLPROOF_DATA_DIR) / "certificates" / ("M" + std::to_string(m));
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      const Certificate cert = Certificate::parse(read_file(entry.path()));
      CHECK(cert.m == m);
      CHECK(entry.path().filename() == certificate_file_name(m, cert.target));
      CHECK(cert.max_index_magnitude() <= 6);
      CHECK_MESSAGE(verify_certificate(cert, translate(cert.target, claims(m))), entry.path().string());
      ++count;
    }
    CHECK(count == (m == 11 ? 10 : 12));
  }
}

TEST_CASE("smoke campaigns") {
  for (int m : {7, 8}) {
    CampaignOptions opt;
    opt.cap = 4;
    opt.record_time = false;
    const auto rep = prove_modulus(m, opt);
    CHECK(rep.success());
    for (const auto& e : rep.entries) {
      CHECK(e.status != "failed");
      if (e.status == "proved") CHECK(verify_certificate(e.cert, translate(e.profile, claims(m))));
    }
    CHECK(rep.to_json(false).at("success") == true);
  }
  CampaignOptions tiny;
  tiny.cap = 0;
  tiny.max_depth = 1;
  CHECK_FALSE(prove_modulus(11, tiny).success());
}

}  // TEST_SUITE

TEST_SUITE("identities") {

TEST_CASE("product text") {
  const auto euler = product_from_spec("*euler", 10);
  CHECK(euler == poch_infinite({1, 1, 0}, 10));
  CHECK(product_from_spec("theta:1,4@5", 8) == inverse(theta_product({1, 4}, 5, 8)));
  CHECK(product_from_spec("poch:1@5;poch:4@5", 8) == inverse(theta(1, 5, 8)));
  CHECK(table_product_spec(sum_product_table(11).front(), 11) == "theta:2,3,3,4,4,5,5@11;euler");
  CHECK_THROWS_AS(product_from_spec("theta:0@5", 8), std::invalid_argument);
  CHECK_THROWS_AS(product_from_spec("gamma:1@5", 8), std::invalid_argument);
  CHECK_THROWS_AS(product_from_spec("theta:1,2", 8), std::invalid_argument);
  CHECK_THROWS_AS(sum_product_table(12), std::invalid_argument);
}

TEST_CASE("table sizes and a few rows at low order") {
  CHECK(sum_product_table(11).size() == 15);
  CHECK(sum_product_table(13).size() == 22);
  for (int m : {11, 13}) {
    const auto& rows = sum_product_table(m);
    for (std::size_t i : {std::size_t{0}, rows.size() / 2, rows.size() - 1}) {
      const auto r = verify_table_row(m, rows[i], 15);
      CHECK_MESSAGE(r.pass, r.id << " " << r.detail);
    }
  }
}

TEST_CASE("classical sums at low order") {
  CHECK(agree(rogers_ramanujan_sum(0, 30), product_from_spec("theta:1@5", 30), 30));
  CHECK(agree(andrews_gordon_sum(2, 2, 30), andrews_gordon_product(2, 2, 30), 30));
  CHECK(agree(cdu_mod8_sum(20), product_from_spec("theta:2,3,3,4@8", 20), 20));
}

}  // TEST_SUITE
