#include "tropid/constructors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

namespace tropid {

  namespace {

    WordExpr const& letter_a() {
      static WordExpr const a = WordExpr::letter('a');
      return a;
    }

    WordExpr const& letter_b() {
      static WordExpr const b = WordExpr::letter('b');
      return b;
    }

    WordExpr ab_image() {
      return WordExpr::word("ab");
    }

    WordExpr ba_image() {
      return WordExpr::word("ba");
    }

    // <w x w [ab,ba], w y w [ab,ba]> with the copies of w shared.
    Identity doubled_identity(Word const& w, char x, char y) {
      auto base = WordExpr::word(w);
      auto side = [&](char c) {
        return WordExpr::subst(
            WordExpr::concat({base, WordExpr::letter(c), base}), ab_image(),
            ba_image());
      };
      return Identity(side(x), side(y));
    }

    std::uint64_t to_exponent(Integer const& n) {
      if (n > std::numeric_limits<std::uint64_t>::max()) {
        throw PreconditionFailed("exponent " + n.str() + " does not fit in 64 bits");
      }
      return static_cast<std::uint64_t>(n);
    }

    void check_exponent_bound(std::uint64_t t, std::size_t n, bool allow_remark) {
      std::uint64_t const bound = (n - 1) * (n - 1) + 1;
      if (t < bound && !allow_remark) {
        throw PreconditionFailed("exponent t = " + std::to_string(t)
                                 + " is below the bound (n-1)^2 + 1 = "
                                 + std::to_string(bound));
      }
    }

    bool diagonal_distinct(TropMatrix const& m) {
      if (!is_diagonal(m)) {
        return false;
      }
      std::set<Integer> seen;
      for (auto const& d : diagonal(m)) {
        if (d.is_neg_inf() || !seen.insert(d.value()).second) {
          return false;
        }
      }
      return true;
    }

    bool full_cycle(TropMatrix const& m) {
      auto sigma = underlying_permutation(m);
      return sigma && sigma->is_full_cycle();
    }

  }  // namespace

  FactorWitness factor_witness(std::string_view w) {
    if (w.empty()) {
      throw PreconditionFailed("factor witness needs a nonempty word");
    }
    std::size_t const n = w.size();
    FactorWitness     out{Word(w), {0}, TropMatrix(n + 1), TropMatrix(n + 1)};
    for (char c : w) {
      if (c == 'a') {
        out.params.push_back(out.params.back() - 1);
      } else if (c == 'b') {
        out.params.push_back(out.params.back() + 1);
      } else {
        throw PreconditionFailed(std::string("letter '") + c
                                 + "' is not one of a, b");
      }
    }
    for (std::size_t k = 0; k <= n; ++k) {
      out.a(k, k) = out.params[k];
    }
    out.b(0, 0) = -out.params.front();
    out.b(n, n) = -out.params.back();
    for (std::size_t k = 0; k < n; ++k) {
      out.b(k, k + 1) = 0;
    }
    return out;
  }

  Identity zur_identity(std::string_view w, std::size_t n) {
    if (w.empty() || n == 0) {
      throw PreconditionFailed("zur identity needs a nonempty word and n >= 1");
    }
    if (auto missing = first_missing_factor(w, n - 1)) {
      throw PreconditionFailed("word " + Word(w) + " lacks the factor "
                               + *missing + " of length "
                               + std::to_string(n - 1));
    }
    Word const wx = Word(w) + 'a' + Word(w);
    Word const wy = Word(w) + 'b' + Word(w);
    for (auto const* side : {&wx, &wy}) {
      for (char c : {'a', 'b'}) {
        if (has_run(*side, c, n)) {
          throw PreconditionFailed(*side + " contains the run " + Word(n, c));
        }
      }
    }
    return doubled_identity(Word(w), 'a', 'b');
  }

  Word alternating_tail(std::size_t n) {
    if (n < 4) {
      throw PreconditionFailed("the alternating construction needs n >= 4");
    }
    Word out;
    if (n % 2 == 0) {
      out = "b";
      for (std::size_t i = 0; i < (n - 2) / 2; ++i) {
        out += "ab";
      }
    } else {
      for (std::size_t i = 0; i < (n - 1) / 2; ++i) {
        out += "ba";
      }
    }
    return out;
  }

  Word separating_base_word(std::size_t n) {
    bool const even = n % 2 == 0;
    Word       out  = alternating_tail(n);
    if (even) {
      out += "ba";
    }
    for (auto w : words_of_length(n - 1)) {
      if (w.starts_with("bb")) {
        w.erase(0, 2);
      }
      std::string_view const suffix = even ? "aa" : "bb";
      if (w.ends_with(suffix)) {
        w.erase(w.size() - 2);
      }
      out += "bb";
      out += w;
      out += even ? "aa" : "bba";
    }
    if (even) {
      out += "bba";
    }
    return out;
  }

  SeparatingPair ut_separating_pair(std::size_t n) {
    if (n == 0) {
      throw PreconditionFailed("ut_separating_pair needs n >= 1");
    }
    if (n == 1) {
      return SeparatingPair{
          1,
          Identity(WordExpr::word("ab"), WordExpr::word("ba")),
          {TropMatrix{{0, 0}, {neg_inf, 0}}, TropMatrix::diagonal({0, 1})},
          "",
          "",
          ""};
    }
    if (n == 2) {
      Word u = "abaab", v = "abbab";
      auto id = Identity(WordExpr::subst(WordExpr::word(u), ab_image(), ba_image()),
                         WordExpr::subst(WordExpr::word(v), ab_image(), ba_image()));
      return SeparatingPair{2, std::move(id), factor_witness("aa").assignment(),
                            "aa", u, v};
    }
    if (n == 3) {
      Word const w = "abbaab";
      return SeparatingPair{3, doubled_identity(w, 'b', 'a'),
                            factor_witness("bab").assignment(), "bab",
                            w + 'b' + w, w + 'a' + w};
    }
    Word const base      = separating_base_word(n);
    Word const separator = 'a' + alternating_tail(n);
    return SeparatingPair{n, doubled_identity(base, 'a', 'b'),
                          factor_witness(separator).assignment(), separator,
                          base + 'a' + base, base + 'b' + base};
  }

  Integer lcm_upto(std::size_t n) {
    if (n == 0) {
      throw PreconditionFailed("lcm_upto needs n >= 1");
    }
    Integer acc = 1;
    for (std::size_t k = 2; k <= n; ++k) {
      acc = boost::multiprecision::lcm(acc, Integer(k));
    }
    return acc;
  }

  Identity fulliden_compose_i(WordExpr const& u,
                              WordExpr const& v,
                              WordExpr const& q,
                              WordExpr const& r,
                              std::uint64_t   t,
                              std::size_t     n,
                              bool            allow_remark) {
    if (n < 2) {
      throw PreconditionFailed("fulliden composition needs n >= 2");
    }
    check_exponent_bound(t, n, allow_remark);
    auto const N  = to_exponent(lcm_upto(n));
    auto       an = WordExpr::power(letter_a(), N);
    auto       bn = WordExpr::power(letter_b(), N);
    auto       w  = WordExpr::power(concat(q, r), t);
    auto       x  = WordExpr::subst(w, an, bn);
    auto       y  = WordExpr::subst(concat(w, r), an, bn);
    return Identity(WordExpr::subst(concat(u, letter_a()), x, y),
                    WordExpr::subst(concat(v, letter_a()), x, y));
  }

  Identity fulliden_compose_ii(WordExpr const&              u,
                               WordExpr const&              v,
                               WordExpr const&              p,
                               WordExpr const&              q,
                               WordExpr const&              r,
                               std::optional<std::uint64_t> t,
                               std::size_t                  n,
                               bool                         allow_remark) {
    if (n < 2) {
      throw PreconditionFailed("fulliden composition needs n >= 2");
    }
    if (!t && !allow_remark) {
      throw PreconditionFailed("omitting the exponent requires allow_remark");
    }
    if (t) {
      check_exponent_bound(*t, n, allow_remark);
    }
    auto const N  = to_exponent(lcm_upto(n));
    auto       an = WordExpr::power(letter_a(), N);
    auto       bn = WordExpr::power(letter_b(), N);
    auto       w  = WordExpr::power(WordExpr::concat({p, q, p, r, p}), t.value_or(1));
    auto       x  = WordExpr::subst(WordExpr::concat({w, q, p}), an, bn);
    auto       y  = WordExpr::subst(WordExpr::concat({w, r, p}), an, bn);
    return Identity(WordExpr::subst(concat(u, letter_a()), x, y),
                    WordExpr::subst(concat(v, letter_a()), x, y));
  }

  Identity m3_identity() {
    auto u = WordExpr::word("aabbbaaabababbbaa");
    auto v = WordExpr::word("aabbbababaaabbbaa");
    auto p = WordExpr::word(substitute("abbaab", "ab", "ba"));
    return fulliden_compose_ii(u, v, p, WordExpr::word("ab"),
                               WordExpr::word("ba"), std::nullopt, 3, true);
  }

  WitnessAssignment m4_witness() {
    TropMatrix x{{2, neg_inf, neg_inf, neg_inf},
                 {neg_inf, 4, neg_inf, neg_inf},
                 {3, neg_inf, neg_inf, neg_inf},
                 {neg_inf, neg_inf, 4, 0}};
    TropMatrix y{{neg_inf, 0, neg_inf, neg_inf},
                 {neg_inf, neg_inf, 1, neg_inf},
                 {neg_inf, neg_inf, neg_inf, 1},
                 {1, neg_inf, neg_inf, neg_inf}};
    return {std::move(x), std::move(y)};
  }

  Identity m2_falsifier_pair() {
    Word const outer = "aabbbbaa";
    return Identity(WordExpr::word(outer + "aabb" + outer),
                    WordExpr::word(outer + "bbaa" + outer));
  }

  InductWords induct_words(InductConfig const& cfg) {
    if (cfg.n < 3) {
      throw PreconditionFailed("induct construction needs n >= 3");
    }
    if (cfg.levels.size() != cfg.n - 2) {
      throw PreconditionFailed("induct construction needs one level per k in 3..n");
    }
    InductWords out;
    out.a.resize(cfg.n + 1);
    out.b.resize(cfg.n + 1);
    out.a[cfg.n] = letter_a();
    out.b[cfg.n] = letter_b();
    for (std::size_t k = cfg.n; k >= 3; --k) {
      auto const& level = cfg.levels[k - 3];
      if (level.k != k) {
        throw PreconditionFailed("induct levels must be listed for k = 3, ..., n in order");
      }
      check_exponent_bound(level.t, k, false);
      if (!Identity(level.q, level.r).is_balanced()) {
        throw PreconditionFailed("level identity for k = " + std::to_string(k)
                                 + " is not balanced");
      }
      auto const K    = to_exponent(lcm_upto(k));
      auto       ak   = WordExpr::power(*out.a[k], K);
      auto       bk   = WordExpr::power(*out.b[k], K);
      auto       base = WordExpr::power(concat(level.q, level.r), level.t);
      out.a[k - 1]    = WordExpr::subst(base, ak, bk);
      out.b[k - 1]    = WordExpr::subst(concat(base, level.r), ak, bk);
    }
    return out;
  }

  Identity induct_identity(InductConfig const& cfg,
                           WordExpr const&     u2,
                           WordExpr const&     v2) {
    auto words = induct_words(cfg);
    auto side  = [&](WordExpr const& x) {
      std::vector<WordExpr> items{WordExpr::subst(x, *words.a[2], *words.b[2])};
      for (std::size_t k = 2; k < cfg.n; ++k) {
        items.push_back(*words.a[k]);
      }
      return WordExpr::concat(std::move(items));
    };
    return Identity(side(u2), side(v2));
  }

  bool is_prime(std::uint64_t p) {
    if (p < 2) {
      return false;
    }
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        return false;
      }
    }
    return true;
  }

  TropMatrix cycle_matrix(std::size_t n) {
    return TropMatrix::permutation(Permutation::rotation(n),
                                   std::vector<TropValue>(n, 0));
  }

  PrimeSeparation prime_separation(std::uint64_t p) {
    if (!is_prime(p)) {
      throw PreconditionFailed(std::to_string(p) + " is not prime");
    }
    if (p == 2) {
      auto pair = ut_separating_pair(1);
      return PrimeSeparation{2, std::move(pair.identity), std::move(pair.witness),
                             0, std::nullopt, {}};
    }
    std::vector<TropValue> weights;
    for (std::uint64_t i = 0; i < p; ++i) {
      weights.emplace_back(i);
    }
    TropMatrix const x = cycle_matrix(p);
    TropMatrix const y = TropMatrix::diagonal(weights);

    PrimeLevel top{p - 1, x, y, full_cycle(x), diagonal_distinct(y), 0, std::nullopt};
    if (p == 3) {
      top.m = 2;
      return PrimeSeparation{3, m2_falsifier_pair(), {x, y}, 0, std::nullopt, {top}};
    }

    std::uint64_t const t = (p * p * p - 1) / 2;
    std::vector<PrimeLevel>  levels{top};
    std::vector<InductLevel> config_levels;

    // Appends the least a^j (j >= 0) making |q|_a = -1 (mod p).
    auto adjust = [p](WordExpr q, WordExpr r) {
      auto const          count = static_cast<std::uint64_t>(q.count('a') % p);
      std::uint64_t const j     = (2 * p - 1 - count) % p;
      if (j > 0) {
        auto tail = WordExpr::power(letter_a(), j);
        q         = concat(q, tail);
        r         = concat(r, tail);
      }
      return std::tuple{std::move(q), std::move(r), j};
    };

    TropMatrix cur_a = x, cur_b = y;
    for (std::size_t k = p - 1; k >= 3; --k) {
      auto const  pair = ut_separating_pair(k);
      auto const& q0   = pair.identity.lhs();
      auto const& r0   = pair.identity.rhs();
      auto const  K    = to_exponent(lcm_upto(k));
      WitnessAssignment const powered{power(cur_a, K), power(cur_b, K)};

      std::vector<std::pair<WordExpr, WordExpr>> candidates{{q0, r0}};
      std::vector<std::optional<PrimeRepair>>    repairs{std::nullopt};
      for (std::uint64_t s = 0; s < p; ++s) {
        for (auto form : {PrimeRepair::Form::doubled, PrimeRepair::Form::crossed}) {
          auto join = [&](WordExpr const& u, WordExpr const& v) {
            std::vector<WordExpr> items{u};
            if (s > 0) {
              items.push_back(WordExpr::power(letter_a(), s));
            }
            items.push_back(v);
            return WordExpr::concat(std::move(items));
          };
          bool const crossed = form == PrimeRepair::Form::crossed;
          candidates.emplace_back(join(q0, crossed ? r0 : q0), join(r0, crossed ? q0 : r0));
          repairs.push_back(PrimeRepair{form, s});
        }
      }

      bool found = false;
      for (std::size_t c = 0; c < candidates.size() && !found; ++c) {
        auto [q, r, ja] = adjust(candidates[c].first, candidates[c].second);
        auto       base  = WordExpr::power(concat(q, r), t);
        TropMatrix new_a = evaluate(base, powered);
        TropMatrix new_b = evaluate(concat(base, r), powered);
        if (!diagonal_distinct(new_b)) {
          continue;
        }
        found     = true;
        bool cyc  = full_cycle(new_a);
        cur_a     = new_a;
        cur_b     = new_b;
        levels.push_back(PrimeLevel{k - 1, std::move(new_a), std::move(new_b), cyc, true, ja,
                                    repairs[c]});
        config_levels.push_back(InductLevel{k, std::move(q), std::move(r), t});
      }
      if (!found) {
        throw PreconditionFailed("no level identity with distinct diagonal at level k = "
                                 + std::to_string(k));
      }
    }
    std::reverse(config_levels.begin(), config_levels.end());
    InductConfig cfg{p - 1, std::move(config_levels)};
    auto         m2 = m2_falsifier_pair();
    auto         id = induct_identity(cfg, m2.lhs(), m2.rhs());
    return PrimeSeparation{p, std::move(id), {x, y}, t, std::move(cfg), std::move(levels)};
  }

}  // namespace tropid
