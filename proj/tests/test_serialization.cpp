#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include <tropid/constructors.hpp>
#include <tropid/serialization.hpp>

#include "support.hpp"

using namespace tropid;

TEST_CASE("scalar encoding", "[serialization]") {
  CHECK(to_json(TropValue(neg_inf)) == json("-inf"));
  CHECK(to_json(TropValue(-7)) == json(-7));
  Integer big("123456789012345678901234567890");
  CHECK(to_json(TropValue(big)) == json("123456789012345678901234567890"));
  CHECK(trop_value_from_json(to_json(TropValue(big))) == TropValue(big));
  CHECK(trop_value_from_json(json("-inf")).is_neg_inf());
  CHECK_THROWS_AS(trop_value_from_json(json("abc")), FormatError);
  CHECK_THROWS_AS(trop_value_from_json(json(1.5)), FormatError);
}

TEST_CASE("matrix round trip", "[serialization][property]") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = oracle::to(oracle::random_matrix(rng, 1 + trial % 5, false, -100, 100, 30));
    REQUIRE(matrix_from_json(to_json(m)) == m);
    REQUIRE(matrix_from_json(json::parse(to_json(m).dump())) == m);
  }
  CHECK(to_json(TropMatrix{{1, neg_inf}, {0, 2}}).dump()
        == R"({"dim":2,"entries":[[1,"-inf"],[0,2]]})");
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"dim":2,"entries":[[1,2]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"entries":[[1]]})")), FormatError);
}

TEST_CASE("expression round trip", "[serialization]") {
  auto e = WordExpr::subst(WordExpr::power(WordExpr::word("ab"), 1'000'000'000'000ULL),
                           WordExpr::letter('b'),
                           WordExpr::concat({WordExpr::word("aab"), WordExpr::letter('a')}));
  auto j = to_json(e);
  CHECK(j["t"] == "sub");
  CHECK(j["target"]["exp"] == "1000000000000");
  auto back = expr_from_json(j);
  CHECK(back.length() == e.length());
  CHECK_FALSE(first_difference(back, e).has_value());
  CHECK(to_json(back) == j);

  CHECK_THROWS_AS(expr_from_json(json::parse(R"({"t":"pow","base":{"t":"let","v":"a"},"exp":"0"})")),
                  FormatError);
  CHECK_THROWS_AS(expr_from_json(json::parse(R"({"t":"let","v":"ab"})")), FormatError);
  CHECK_THROWS_AS(expr_from_json(json::parse(R"({"t":"word","v":"abc"})")), FormatError);
  CHECK_THROWS_AS(expr_from_json(json::parse(R"({"t":"zzz"})")), FormatError);
}

TEST_CASE("identity and witness round trip", "[serialization]") {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto const pair = ut_separating_pair(n);
    auto const id   = identity_from_json(to_json(pair.identity));
    REQUIRE(to_json(id) == to_json(pair.identity));
    auto const w = witness_from_json(to_json(pair.witness));
    REQUIRE(w.a == pair.witness.a);
    REQUIRE(w.b == pair.witness.b);
  }
  auto const fw = factor_witness("bab");
  auto const j  = to_json(fw);
  CHECK(j["word"] == "bab");
  CHECK(j["params"] == json::array({0, 1, 0, 1}));
  CHECK(witness_from_json(j).b == fw.b);

  auto same = json::parse(R"({"lhs":{"t":"word","v":"ab"},"rhs":{"t":"word","v":"ab"}})");
  CHECK_THROWS_AS(identity_from_json(same), NotAnIdentity);
}

TEST_CASE("report encoding", "[serialization]") {
  auto const pair = ut_separating_pair(2);
  SamplerConfig cfg;
  cfg.dim    = 3;
  cfg.shape  = Shape::upper_triangular;
  cfg.trials = 10'000;
  auto const r = check_satisfaction(pair.identity, cfg);
  auto const j = to_json(r);
  CHECK(j["outcome"] == "counterexample");
  CHECK(j["target"] == "UT3");
  CHECK(j["config"]["neginf_prob"] == "1/10");
  CHECK_FALSE(j.contains("elapsed_ms"));
  CHECK(to_json(r, true).contains("elapsed_ms"));
  CHECK(j["counterexample"]["entry"][0].get<int>() >= 1);

  auto const w = assignment_from_json(j);
  CHECK(check_falsification(pair.identity, w).found_counterexample());

  cfg.dim        = 2;
  auto const ok  = to_json(check_satisfaction(pair.identity, cfg));
  CHECK(ok["outcome"] == "no-counterexample");
  CHECK(ok["note"].get<std::string>().find("not proof") != std::string::npos);
  CHECK_THROWS_AS(assignment_from_json(ok), FormatError);
}

TEST_CASE("prime diagnostics", "[serialization]") {
  auto const j = to_json(prime_separation(5));
  CHECK(j["t"] == 62);
  CHECK(j["lhs_length"] == "586255422480");
  REQUIRE(j["levels"].size() == 3);
  for (auto const& level : j["levels"]) {
    CHECK(level["A_is_p_cycle"] == true);
    CHECK(level["B_diagonal_distinct"] == true);
    CHECK(level["A_cycle_type"] == json::array({5}));
  }
}

TEST_CASE("files", "[serialization]") {
  auto const dir  = oracle::temp_dir("serialization");
  auto const path = (dir / "x.json").string();
  write_json_file(path, to_json(factor_witness("ab")));
  CHECK(read_json_file(path)["word"] == "ab");
  CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), FormatError);
  std::ofstream(dir / "bad.json") << "{";
  CHECK_THROWS_AS(read_json_file((dir / "bad.json").string()), FormatError);
}
