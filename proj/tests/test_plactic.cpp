#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include <tropid/constructors.hpp>
#include <tropid/plactic.hpp>

#include "support.hpp"

using namespace tropid;

namespace {

  std::vector<int> members(unsigned s, int n) {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i) {
      if (s & (1u << (i - 1))) {
        out.push_back(i);
      }
    }
    return out;
  }

  bool leq(unsigned s, unsigned t, int n) {
    auto x = members(s, n), y = members(t, n);
    if (x.size() < y.size()) {
      return false;
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (x[i] > y[i]) {
        return false;
      }
    }
    return true;
  }

  // The generator image straight from the definition, indexed by the
  // library's subset order.
  oracle::Mat reference_generator(int x, int n) {
    SubsetIndex const index(n);
    std::size_t const size = index.size();
    oracle::Mat       out(size, std::vector<oracle::Val>(size));
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        unsigned p = index[i], q = index[j];
        if (std::popcount(p) != std::popcount(q) || !leq(p, q, n)) {
          continue;
        }
        bool hit = false;
        for (unsigned s = 0; s < (1u << n); ++s) {
          if (leq(p, s, n) && leq(s, q, n) && (s & (1u << (x - 1)))) {
            hit = true;
          }
        }
        out[i][j] = hit ? 1 : 0;
      }
    }
    return out;
  }

  std::string random_word(std::mt19937_64& rng, int n, int len) {
    std::uniform_int_distribution<int> letter(1, n);
    std::string                        w;
    for (int i = 0; i < len; ++i) {
      w += static_cast<char>('0' + letter(rng));
    }
    return w;
  }

}  // namespace

TEST_CASE("schensted insertion", "[plactic]") {
  auto t = Tableau::from_word("3121");
  CHECK(t.rows() == std::vector<std::vector<int>>{{1, 1}, {2}, {3}});
  CHECK(t.reading_word() == "3211");
  CHECK(Tableau::from_word(t.reading_word()) == t);
  CHECK(t.size() == 4);
  CHECK(Tableau::from_word("").empty());
  CHECK_THROWS_AS(Tableau::from_word("15", 4), PreconditionFailed);
  CHECK_THROWS_AS(Tableau({{2, 1}}), PreconditionFailed);
  CHECK_THROWS_AS(Tableau({{1}, {1}}), PreconditionFailed);
  CHECK_THROWS_AS(Tableau({{1}, {2, 3}}), PreconditionFailed);
}

TEST_CASE("knuth classes match tableaux", "[plactic][property]") {
  std::map<Tableau, std::set<Word>> classes;
  std::vector<Word>                 words{""};
  for (int len = 1; len <= 5; ++len) {
    std::vector<Word> next;
    for (auto const& w : words) {
      for (char c = '1'; c <= '3'; ++c) {
        next.push_back(w + c);
      }
    }
    words = next;
    for (auto const& w : words) {
      classes[Tableau::from_word(w, 3)].insert(w);
    }
  }
  for (auto const& [t, cls] : classes) {
    REQUIRE(knuth_closure(*cls.begin()) == cls);
  }
  CHECK(knuth_closure("213") == std::set<Word>{"213", "231"});
  CHECK_THROWS_AS(knuth_closure("123456789", 8), PreconditionFailed);
}

TEST_CASE("plactic multiplication is concatenation", "[plactic][property]") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    auto x = random_word(rng, 4, 1 + trial % 7);
    auto y = random_word(rng, 4, 1 + trial % 5);
    REQUIRE(plactic_mul(Tableau::from_word(x), Tableau::from_word(y)) == Tableau::from_word(x + y));
  }
}

TEST_CASE("subset order", "[plactic]") {
  SubsetIndex const two(2);
  CHECK(two.subsets() == std::vector<Subset>{make_subset({1, 2}), make_subset({1}),
                                             make_subset({2}), make_subset({})});
  SubsetIndex const four(4);
  CHECK(four.size() == 16);
  CHECK(four[0] == make_subset({1, 2, 3, 4}));
  CHECK(four[15] == 0);
  CHECK(four.index_of(make_subset({1, 3})) == 6);
  CHECK(subset_to_string(make_subset({2, 4})) == "{2,4}");
  CHECK(elements(make_subset({3, 1})) == std::vector<int>{1, 3});

  for (int n = 1; n <= 5; ++n) {
    for (unsigned p = 0; p < (1u << n); ++p) {
      for (unsigned q = 0; q < (1u << n); ++q) {
        REQUIRE(subset_leq(p, q) == leq(p, q, n));
        std::vector<Subset> expected;
        for (unsigned s = 0; s < (1u << n); ++s) {
          if (leq(p, s, n) && leq(s, q, n)) {
            expected.push_back(s);
          }
        }
        auto got = order_interval(n, p, q);
        std::sort(got.begin(), got.end());
        REQUIRE(got == expected);
      }
    }
  }
}

TEST_CASE("tropical representation", "[plactic]") {
  for (int n = 1; n <= 4; ++n) {
    for (int x = 1; x <= n; ++x) {
      REQUIRE(oracle::from(rho_generator(x, n)) == reference_generator(x, n));
      REQUIRE(is_upper_triangular(rho_generator(x, n)));
      REQUIRE(rho_identity_element(n) * rho_generator(x, n) == rho_generator(x, n));
      REQUIRE(rho_generator(x, n) * rho_identity_element(n) == rho_generator(x, n));
    }
  }
  CHECK(rho("3121") == rho("3211"));
  CHECK(rho("21") != rho("12"));
  CHECK_THROWS(rho(""));
}

TEST_CASE("rho is a faithful morphism on short words", "[plactic][property]") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    auto x = random_word(rng, 4, 1 + trial % 6);
    auto y = random_word(rng, 4, 1 + trial % 4);
    REQUIRE(rho(x + y) == rho(x) * rho(y));
  }

  std::map<Tableau, TropMatrix> seen;
  std::map<TropMatrix, Tableau> back;
  std::vector<Word>             words{""};
  for (int len = 1; len <= 4; ++len) {
    std::vector<Word> next;
    for (auto const& w : words) {
      for (char c = '1'; c <= '4'; ++c) {
        next.push_back(w + c);
      }
    }
    words = next;
    for (auto const& w : words) {
      auto t = Tableau::from_word(w);
      auto m = rho(w);
      if (auto it = seen.find(t); it != seen.end()) {
        REQUIRE(it->second == m);
      } else {
        seen.emplace(t, m);
        REQUIRE(back.emplace(m, t).second);
      }
    }
  }
  CHECK(seen.size() == 4 + 16 + 44 + 116);
}

TEST_CASE("the plactic lift", "[plactic]") {
  auto const pair = p4_ut5_separation();
  CHECK(pair.identity.lhs().length() == 50);
  CHECK(pair.identity.rhs().length() == 50);
  CHECK(is_factor("abab", pair.inner_lhs));
  CHECK_FALSE(is_factor("abab", pair.inner_rhs));
  CHECK_THROWS_AS(plactic_identity_lift("ab", "ab"), NotAnIdentity);

  auto const lhs = expand(pair.identity.lhs());
  auto const rhs = expand(pair.identity.rhs());
  auto const a   = oracle::from(pair.witness.a);
  auto const b   = oracle::from(pair.witness.b);
  CHECK(oracle::eval(lhs, a, b)[0][4] != oracle::eval(rhs, a, b)[0][4]);

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    auto x = random_word(rng, 4, 1 + trial % 6);
    auto y = random_word(rng, 4, 1 + trial % 5);
    auto l = Tableau::from_word(oracle::subst(lhs, x, y));
    auto r = Tableau::from_word(oracle::subst(rhs, x, y));
    REQUIRE(l == r);
    REQUIRE(evaluate_plactic(pair.identity.lhs(), {Tableau::from_word(x), Tableau::from_word(y)}) == l);
  }
}
