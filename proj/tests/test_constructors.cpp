#include <catch2/catch_amalgamated.hpp>

#include <set>

#include <tropid/constructors.hpp>

#include "support.hpp"

using namespace tropid;

namespace {

  oracle::Mat upper_sample(std::mt19937_64& rng, std::size_t n) {
    return oracle::random_matrix(rng, n, true, -6, 6, 15);
  }

  // Both sides on `trials` random matrices, by naive products of the
  // expanded words. Returns the number of disagreements.
  int disagreements(Identity const& id, std::size_t n, bool upper, int trials,
                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto const      lhs = expand(id.lhs());
    auto const      rhs = expand(id.rhs());
    int             bad = 0;
    for (int k = 0; k < trials; ++k) {
      auto a = upper ? upper_sample(rng, n) : oracle::random_matrix(rng, n, false);
      auto b = upper ? upper_sample(rng, n) : oracle::random_matrix(rng, n, false);
      bad += oracle::eval(lhs, a, b) != oracle::eval(rhs, a, b);
    }
    return bad;
  }

}  // namespace

TEST_CASE("factor witness matrices", "[constructors]") {
  auto w = factor_witness("aa");
  CHECK(w.params == std::vector<std::int64_t>{0, -1, -2});
  CHECK(w.a == TropMatrix::diagonal({0, -1, -2}));
  CHECK(w.b == TropMatrix{{0, 0, neg_inf}, {neg_inf, neg_inf, 0}, {neg_inf, neg_inf, 2}});
  CHECK(factor_witness("bab").params == std::vector<std::int64_t>{0, 1, 0, 1});
  CHECK_THROWS_AS(factor_witness(""), PreconditionFailed);
  CHECK_THROWS_AS(factor_witness("abc"), PreconditionFailed);
}

TEST_CASE("the length-10 identity fails on the aa witness", "[constructors]") {
  auto const pair = ut_separating_pair(2);
  auto const lhs  = expand(pair.identity.lhs());
  auto const rhs  = expand(pair.identity.rhs());
  CHECK(lhs == "abbaababba");
  CHECK(rhs == "abbabaabba");

  CHECK(lhs == substitute(pair.inner_lhs, "ab", "ba"));
  auto w = factor_witness("aa");
  auto a = oracle::from(w.a);
  auto b = oracle::from(w.b);
  CHECK(oracle::path_max(lhs, a, b, 0, 2) == -1);
  CHECK(oracle::path_max(rhs, a, b, 0, 2) == -2);
  CHECK(oracle::path_max(lhs, a, b, 0, 2) == oracle::eval(lhs, a, b)[0][2]);
  CHECK(pair.separating_word == "aa");
  CHECK(disagreements(pair.identity, 2, true, 2000, 31) == 0);
}

TEST_CASE("factor witness law on explicit pairs", "[constructors][property]") {
  std::mt19937_64 rng(32);
  int             checked = 0;
  for (int trial = 0; trial < 3000 && checked < 400; ++trial) {
    std::uniform_int_distribution<int> len(1, 8), wlen(1, 4);
    auto random_word = [&](int n) {
      std::string s;
      for (int i = 0; i < n; ++i) {
        s += (rng() & 1) ? 'a' : 'b';
      }
      return s;
    };
    auto w = random_word(wlen(rng));
    auto u = random_word(len(rng));
    auto v = random_word(len(rng));
    if (!is_factor(w, u) || is_factor(w, v)) {
      continue;
    }
    ++checked;
    auto fw = factor_witness(w);
    auto a  = oracle::from(fw.a);
    auto b  = oracle::from(fw.b);
    auto ab = oracle::mul(a, b);
    auto ba = oracle::mul(b, a);
    REQUIRE(oracle::eval(u, ab, ba)[0][w.size()] != oracle::eval(v, ab, ba)[0][w.size()]);
  }
  CHECK(checked == 400);
}

TEST_CASE("zur identities", "[constructors]") {
  auto id = zur_identity("baaabbbaba", 4);
  CHECK(id.lhs().length() == 42);
  CHECK(id.rhs().length() == 42);
  CHECK(expand(id.lhs()) == substitute("baaabbbaba" "a" "baaabbbaba", "ab", "ba"));
  CHECK(disagreements(id, 4, true, 300, 33) == 0);

  CHECK(zur_identity("abbaab", 3).lhs().length() == 26);
  CHECK_THROWS_WITH(zur_identity("aab", 3), Catch::Matchers::ContainsSubstring("lacks the factor"));
  CHECK_THROWS_WITH(zur_identity("aaabb", 2), Catch::Matchers::ContainsSubstring("run"));
}

TEST_CASE("separating pairs up to n = 6", "[constructors]") {
  std::vector<int> const lengths{2, 10, 26, 226, 530, 1066};
  for (std::size_t n = 1; n <= 6; ++n) {
    CAPTURE(n);
    auto const pair = ut_separating_pair(n);
    REQUIRE(pair.identity.lhs().length() == lengths[n - 1]);
    REQUIRE(pair.identity.is_balanced());
    REQUIRE(pair.witness.a.dim() == n + 1);
    REQUIRE(is_upper_triangular(pair.witness.a));
    REQUIRE(is_upper_triangular(pair.witness.b));

    auto const lhs = expand(pair.identity.lhs());
    auto const rhs = expand(pair.identity.rhs());
    auto const x   = oracle::eval(lhs, oracle::from(pair.witness.a), oracle::from(pair.witness.b));
    auto const y   = oracle::eval(rhs, oracle::from(pair.witness.a), oracle::from(pair.witness.b));
    REQUIRE(x != y);
    REQUIRE(disagreements(pair.identity, n, true, n <= 4 ? 300 : 60, 34 + n) == 0);

    if (n >= 2) {
      REQUIRE(x[0][n] != y[0][n]);
      REQUIRE(is_factor(pair.separating_word, pair.inner_lhs));
      REQUIRE_FALSE(is_factor(pair.separating_word, pair.inner_rhs));
      REQUIRE(lhs == substitute(pair.inner_lhs, "ab", "ba"));
      REQUIRE(rhs == substitute(pair.inner_rhs, "ab", "ba"));
      REQUIRE(pair.witness.a == factor_witness(pair.separating_word).a);
    }
    if (n >= 4) {
      auto const base = separating_base_word(n);
      REQUIRE(all_factors_present(base, n - 1));
      REQUIRE_FALSE(has_run(pair.inner_lhs, 'a', n));
      REQUIRE_FALSE(has_run(pair.inner_lhs, 'b', n));
      REQUIRE_FALSE(has_run(pair.inner_rhs, 'a', n));
      REQUIRE_FALSE(has_run(pair.inner_rhs, 'b', n));
      REQUIRE(pair.separating_word.size() == n);
    }
  }
  CHECK(alternating_tail(4) == "bab");
  CHECK(alternating_tail(5) == "baba");
  CHECK_THROWS_AS(alternating_tail(3), PreconditionFailed);
}

TEST_CASE("composition lengths", "[constructors]") {
  auto p = WordExpr::word(substitute("abbaab", "ab", "ba"));
  auto q = WordExpr::word("ab");
  auto r = WordExpr::word("ba");
  auto w = WordExpr::concat({p, q, p, r, p});
  auto x = WordExpr::subst(WordExpr::concat({w, q, p}), WordExpr::word("aaaaaa"),
                           WordExpr::word("bbbbbb"));
  CHECK(x.length() == 324);

  auto const m3 = m3_identity();
  CHECK(m3.lhs().length() == 5832);
  CHECK(m3.rhs().length() == 5832);
  CHECK(lcm_upto(6) == 60);
  CHECK(lcm_upto(12) == 27720);

  auto u = WordExpr::word("ab");
  auto v = WordExpr::word("ba");
  CHECK_THROWS_AS(fulliden_compose_i(u, v, q, r, 4, 3), PreconditionFailed);
  CHECK_NOTHROW(fulliden_compose_i(u, v, q, r, 4, 3, true));
  CHECK_THROWS_AS(fulliden_compose_ii(u, v, p, q, r, std::nullopt, 3), PreconditionFailed);
  CHECK(fulliden_compose_ii(u, v, p, q, r, 5, 3).lhs().length() == 3 * (5 * 40 + 14) * 6);
}

TEST_CASE("the 5832-letter identity", "[constructors]") {
  auto const id  = m3_identity();
  auto const lhs = expand(id.lhs());
  auto const rhs = expand(id.rhs());
  CHECK(disagreements(id, 3, false, 150, 40) == 0);

  auto const w = m4_witness();
  auto const x = oracle::eval(lhs, oracle::from(w.a), oracle::from(w.b));
  auto const y = oracle::eval(rhs, oracle::from(w.a), oracle::from(w.b));
  CHECK(x[3][0] == 8154);
  CHECK(y[3][0] == 8163);
}

TEST_CASE("the M_2 pair", "[constructors]") {
  auto const id = m2_falsifier_pair();
  CHECK(id.lhs().count('a') == 10);
  CHECK(id.lhs().length() == 20);
  CHECK(disagreements(id, 2, false, 3000, 41) == 0);

  for (std::size_t n : {3, 5}) {
    std::vector<TropValue> d(n, 0);
    d.back() = 1;
    auto a   = oracle::from(cycle_matrix(n));
    auto b   = oracle::from(TropMatrix::diagonal(d));
    CHECK(oracle::eval(expand(id.lhs()), a, b) != oracle::eval(expand(id.rhs()), a, b));
  }
}

TEST_CASE("induct identity telescopes", "[constructors]") {
  auto const u2 = ut_separating_pair(2).identity;
  auto const l3 = ut_separating_pair(3).identity;
  auto const l4 = ut_separating_pair(4).identity;

  InductConfig cfg{4, {{3, l3.lhs(), l3.rhs(), 5}, {4, l4.lhs(), l4.rhs(), 10}}};
  auto const   id = induct_identity(cfg, u2.lhs(), u2.rhs());

  auto const step3 = fulliden_compose_i(u2.lhs(), u2.rhs(), l3.lhs(), l3.rhs(), 5, 3);
  auto const step4 = fulliden_compose_i(step3.lhs(), step3.rhs(), l4.lhs(), l4.rhs(), 10, 4);
  CHECK(id.lhs().length() == step4.lhs().length());
  CHECK_FALSE(first_difference(id.lhs(), step4.lhs()).has_value());
  CHECK_FALSE(first_difference(id.rhs(), step4.rhs()).has_value());

  InductConfig bad{4, {{3, l3.lhs(), l3.rhs(), 4}, {4, l4.lhs(), l4.rhs(), 10}}};
  CHECK_THROWS_AS(induct_identity(bad, u2.lhs(), u2.rhs()), PreconditionFailed);
  InductConfig unordered{4, {{4, l4.lhs(), l4.rhs(), 10}, {3, l3.lhs(), l3.rhs(), 5}}};
  CHECK_THROWS_AS(induct_identity(unordered, u2.lhs(), u2.rhs()), PreconditionFailed);
}

TEST_CASE("prime separation for small primes", "[constructors]") {
  CHECK(is_prime(2));
  CHECK(is_prime(7));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  CHECK_THROWS_AS(prime_separation(4), PreconditionFailed);

  auto const p2 = prime_separation(2);
  CHECK(expand(p2.identity.lhs()) == "ab");
  CHECK(p2.witness.a.dim() == 2);

  auto const p3 = prime_separation(3);
  CHECK(p3.witness.a == cycle_matrix(3));
  CHECK(p3.witness.b == TropMatrix::diagonal({0, 1, 2}));
  auto const a = oracle::from(p3.witness.a);
  auto const b = oracle::from(p3.witness.b);
  CHECK(oracle::eval(expand(p3.identity.lhs()), a, b)
        != oracle::eval(expand(p3.identity.rhs()), a, b));
}

TEST_CASE("prime separation for p = 5", "[constructors]") {
  auto const sep = prime_separation(5);
  CHECK(sep.t == 62);
  CHECK(sep.identity.lhs().length() == Integer("586255422480"));
  CHECK(sep.identity.is_balanced());
  REQUIRE(sep.config.has_value());
  REQUIRE(sep.config->levels.size() == 2);
  CHECK(sep.config->levels[1].k == 4);
  CHECK(sep.config->levels[1].q.count('a') % 5 == 4);
  CHECK(sep.config->levels[0].q.count('a') % 5 == 4);

  REQUIRE(sep.levels.size() == 3);
  auto const words = induct_words(*sep.config);
  for (auto const& level : sep.levels) {
    CAPTURE(level.m);
    CHECK(level.a_is_full_cycle);
    CHECK(level.b_diagonal_distinct);
    CHECK(underlying_permutation(level.a_value)->is_full_cycle());
    CHECK(evaluate(*words.a[level.m], sep.witness) == level.a_value);
    CHECK(evaluate(*words.b[level.m], sep.witness) == level.b_value);
    std::set<Integer> diag;
    for (auto const& d : diagonal(level.b_value)) {
      diag.insert(d.value());
    }
    CHECK(diag.size() == 5);
  }
  CHECK(evaluate(sep.identity.lhs(), sep.witness) != evaluate(sep.identity.rhs(), sep.witness));
}
