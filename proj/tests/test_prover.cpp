#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "cylproof/pipeline.hpp"
#include "cylproof/prover.hpp"
#include "cylproof/relations.hpp"

using namespace cylproof;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kCertDir = std::string(CYLPROOF_DATA_DIR) + "/certificates/";

SExpr target_h(int m, const Profile& c) {
  static std::map<int, ClaimTable> tables;
  if (!tables.count(m)) tables[m] = full_claims(m);
  return translate(c, tables.at(m));
}

SExpr random_combination(const std::vector<Relation>& rels, std::mt19937_64& rng, int count) {
  std::uniform_int_distribution<std::size_t> pick(0, rels.size() - 1);
  std::uniform_int_distribution<int> e(-1, 2), c(-3, 3);
  SExpr out(rels.front().body.modulus());
  for (int i = 0; i < count; ++i) {
    const PolyQZ coeff = PolyQZ::monomial(c(rng), e(rng), e(rng)) + PolyQZ(1);
    out += coeff * rels[pick(rng)].body;
  }
  return out;
}

}  // namespace

TEST_SUITE("prover") {

TEST_CASE("single relation and proportional rows") {
  const auto r = gen_R1(11, 1, {0, 1, 1}, {1, 1, 1});
  auto one = RelMatrix::build({r});
  one.echelonize();
  CHECK(one.row_count() == 1);
  CHECK(one.rows_in_order().front()->entries.size() <= 5);
  Relation scaled = r;
  scaled.body = PolyQZ::parse("1 + q*z") * r.body;
  auto two = RelMatrix::build({r, scaled});
  two.echelonize();
  CHECK(two.row_count() == 1);
  CHECK(two.zero_rows() == 1);
  CHECK(two.check_provenance());
}

TEST_CASE("row-space preservation on a spanning set") {
  const auto rels = spanning_set(11, 1);
  auto mat = RelMatrix::build(rels);
  mat.echelonize();
  CHECK(mat.row_count() + mat.zero_rows() == rels.size());
  CHECK(mat.check_provenance());
  const auto rows = mat.rows_in_order();
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1]->entries.front().key > rows[i]->entries.front().key);
  for (const auto& r : rels) CHECK(mat.reduce(r.body).remainder.empty());
  std::mt19937_64 rng(1405);
  for (int trial = 0; trial < 10; ++trial) {
    const SExpr h = random_combination(rels, rng, 4);
    CHECK(mat.reduce(h).remainder.empty());
    const Certificate cert = mat.extract_certificate(h);
    CHECK(verify_certificate(cert, h));
  }
}

TEST_CASE("non-members and the zero target") {
  auto mat = RelMatrix::build(spanning_set(11, 1));
  mat.echelonize();
  const SExpr h = SExpr::term(make_sindex(11, {0, 0, 0}, {0, 0, 0}));
  CHECK_FALSE(mat.reduce(h).remainder.empty());
  try {
    mat.extract_certificate(h);
    FAIL("expected NonMemberError");
  } catch (const NonMemberError& e) {
    CHECK_FALSE(e.remainder().empty());
  }
  const Certificate zero = mat.extract_certificate(SExpr(11));
  CHECK(zero.entries.empty());
  CHECK(verify_certificate(zero, SExpr(11)));
}

TEST_CASE("worked certificates for H(7,1,0) and H(6,1,1)") {
  for (const Profile& c : {Profile{7, 1, 0}, Profile{6, 1, 1}}) {
    ProverOptions opt;
    const SExpr h = target_h(11, c);
    const ProofResult res = prove_membership(11, h, opt);
    REQUIRE(res.member);
    Certificate cert = res.cert;
    cert.target = c;
    CHECK(cert.to_text() == read_file(kCertDir + "M11/" + certificate_file_name(11, c)));
  }
  const Certificate h611 = Certificate::parse(read_file(kCertDir + "M11/M11RecH611.txt"));
  REQUIRE(h611.entries.size() == 3);
  CHECK(h611.entries[0].name.to_string() == "R1[{1},{{0,1,1},{0,1,1}}]");
  CHECK(h611.entries[0].num == PolyQZ(1));
  CHECK(h611.entries[1].name.to_string() == "R1[{1},{{1,1,1},{1,1,1}}]");
  CHECK(h611.entries[1].num == PolyQZ::parse("-1 + q*z"));
  CHECK(h611.entries[2].name.to_string() == "R2[{1},{{2,1,1},{-1,1,1}}]");
  CHECK(h611.entries[2].num == PolyQZ::parse("q*z"));
  for (const auto& e : h611.entries) CHECK(e.den == PolyQZ(1));
}

TEST_CASE("certificate text round trip and tampering") {
  const SExpr h = target_h(11, {6, 1, 1});
  const Certificate cert = Certificate::parse(read_file(kCertDir + "M11/M11RecH611.txt"));
  CHECK(verify_certificate(cert, h));
  CHECK(Certificate::parse(cert.to_text()).to_text() == cert.to_text());
  Certificate bad = cert;
  bad.entries[1].num += PolyQZ::parse("q");
  CHECK_FALSE(verify_certificate(bad, h));
  Certificate dropped = cert;
  dropped.entries.pop_back();
  CHECK_FALSE(verify_certificate(dropped, h));
  CHECK_THROWS_AS(Certificate::parse("modulus: 11\ntarget: H(6,1,1)\nstatus: proved\nR1[{1},{{0,1,1}}] : 1 / 1\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(verify_certificate(cert, SExpr::term(make_sindex(13, {0, 0, 0}, {0, 0, 0}))), std::invalid_argument);
}

TEST_CASE("certificates from other seeds and from the spanning feed verify") {
  const SExpr h = target_h(11, {5, 2, 1});
  for (std::uint64_t seed : {1ULL, 77ULL, 4242ULL}) {
    ProverOptions opt;
    opt.seed = seed;
    const auto res = prove_membership(11, h, opt);
    REQUIRE(res.member);
    CHECK(verify_certificate(res.cert, h));
  }
  ProverOptions plain;
  plain.modular_filter = false;
  plain.cap = 3;
  plain.max_depth = 3;
  const SExpr h8 = target_h(8, {3, 2, 0});
  REQUIRE_FALSE(h8.empty());
  const auto res = prove_membership(8, h8, plain);
  REQUIRE(res.member);
  CHECK(verify_certificate(res.cert, h8));
  ProverOptions span;
  span.mode = FeedMode::kSpanning;
  span.cap = 2;
  const auto res2 = prove_membership(8, h8, span);
  REQUIRE(res2.member);
  CHECK(verify_certificate(res2.cert, h8));
}

TEST_CASE("proved targets vanish numerically") {
  SEvaluator ev;
  for (const Profile& c : {Profile{6, 1, 1}, Profile{5, 3, 0}}) {
    const SExpr h = target_h(11, c);
    CHECK(ev.eval(h, 25, 6).is_zero());
  }
}

}  // TEST_SUITE
