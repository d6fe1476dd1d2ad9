#include "reproduce.hpp"

#include <map>
#include <set>

namespace tropid::cli {

  namespace {

    json entry_json(VerificationReport const& r) {
      auto const& ce = std::get<MatrixCounterexample>(r.counterexample);
      return json{{"entry", json::array({ce.entry.row + 1, ce.entry.col + 1})},
                  {"lhs", to_json(ce.entry.lhs)},
                  {"rhs", to_json(ce.entry.rhs)}};
    }

    SamplerConfig sampler(std::uint64_t seed, unsigned threads, std::size_t dim, Shape shape,
                          std::uint64_t trials) {
      SamplerConfig cfg;
      cfg.seed    = seed;
      cfg.threads = threads;
      cfg.dim     = dim;
      cfg.shape   = shape;
      cfg.trials  = trials;
      return cfg;
    }

    json sampled_json(VerificationReport const& r) {
      return json{{"target", r.target},
                  {"trials_run", r.trials_run},
                  {"outcome", r.found_counterexample() ? "counterexample" : "no-counterexample"}};
    }

    CriterionResult adjan(std::uint64_t seed, unsigned threads) {
      CriterionResult out{1, "Adjan identity: UT2 satisfies, UT3 falsifies"};
      auto const      pair = ut_separating_pair(2);
      auto const      sat  = check_satisfaction(
          pair.identity, sampler(seed, threads, 2, Shape::upper_triangular, 10'000));
      auto const fal = check_falsification(pair.identity, factor_witness("aa").assignment());
      auto const& ce = std::get<MatrixCounterexample>(fal.counterexample);
      out.details    = {{"lhs", expand(pair.identity.lhs())},
                        {"rhs", expand(pair.identity.rhs())},
                        {"sampled", sampled_json(sat)},
                        {"falsified", entry_json(fal)}};
      out.pass = !sat.found_counterexample() && ce.entry.row == 0 && ce.entry.col == 2
              && ce.entry.lhs == TropValue(-1) && ce.entry.rhs == TropValue(-2);
      return out;
    }

    CriterionResult zur_example(std::uint64_t seed, unsigned threads) {
      CriterionResult out{2, "zur identity for w = ab^2a^2b: UT3 satisfies, UT4 falsifies"};
      auto const      id  = zur_identity("abbaab", 3);
      auto const      sat = check_satisfaction(
          id, sampler(seed, threads, 3, Shape::upper_triangular, 10'000));
      auto const  fal = check_falsification(id, factor_witness("bab").assignment());
      auto const& ce  = std::get<MatrixCounterexample>(fal.counterexample);
      out.details     = {{"sampled", sampled_json(sat)}, {"falsified", entry_json(fal)}};
      out.pass = !sat.found_counterexample() && ce.entry.row == 0 && ce.entry.col == 3;
      return out;
    }

    CriterionResult ut_chain(std::uint64_t seed, unsigned threads) {
      CriterionResult out{3, "UT_n separating identities, n = 1..6"};
      out.pass    = true;
      out.details = json::array();
      for (std::size_t n = 1; n <= 6; ++n) {
        auto const pair = ut_separating_pair(n);
        auto const sat  = check_satisfaction(
            pair.identity, sampler(seed, threads, n, Shape::upper_triangular, 1'000));
        auto const fal = check_falsification(pair.identity, pair.witness);
        bool       ok  = !sat.found_counterexample() && pair.witness.a.dim() == n + 1
                  && is_upper_triangular(pair.witness.a) && is_upper_triangular(pair.witness.b);
        json row{{"n", n},
                 {"length", expanded_length(pair.identity.lhs()).str()},
                 {"sampled", sampled_json(sat)},
                 {"falsified", entry_json(fal)}};
        if (n >= 4) {
          auto const base   = separating_base_word(n);
          bool const rebuilt = identity_digest(zur_identity(base, n))
                            == identity_digest(pair.identity);
          bool const factors = all_factors_present(base, n - 1);
          bool const runs    = has_run(pair.inner_lhs, 'a', n) || has_run(pair.inner_lhs, 'b', n)
                         || has_run(pair.inner_rhs, 'a', n) || has_run(pair.inner_rhs, 'b', n);
          bool const separates = is_factor(pair.separating_word, pair.inner_lhs)
                              && !is_factor(pair.separating_word, pair.inner_rhs);
          row["all_factors_present"] = factors;
          row["no_runs"]             = !runs;
          row["separator_factor_of_lhs_only"] = separates;
          ok = ok && rebuilt && factors && !runs && separates;
        }
        row["pass"] = ok;
        out.pass    = out.pass && ok;
        out.details.push_back(std::move(row));
      }
      return out;
    }

    CriterionResult m3_m4(std::uint64_t seed, unsigned threads) {
      CriterionResult out{4, "identity of length 5832: M3 satisfies, M4 falsifies"};
      auto const      id  = m3_identity();
      auto const      sat = check_satisfaction(id, sampler(seed, threads, 3, Shape::full, 1'000));
      auto const      fal = check_falsification(id, m4_witness());
      out.details         = {{"lhs_length", expanded_length(id.lhs()).str()},
                             {"rhs_length", expanded_length(id.rhs()).str()},
                             {"sampled", sampled_json(sat)},
                             {"falsified", entry_json(fal)}};
      out.pass = expanded_length(id.lhs()) == 5832 && expanded_length(id.rhs()) == 5832
              && !sat.found_counterexample();
      return out;
    }

    CriterionResult m2_false(std::uint64_t seed, unsigned threads) {
      CriterionResult out{5, "M2 identity falsified by a cycle and a diagonal matrix"};
      auto const      id  = m2_falsifier_pair();
      auto const      sat = check_satisfaction(id, sampler(seed, threads, 2, Shape::full, 10'000));
      out.details         = {{"sampled", sampled_json(sat)}};
      out.pass            = !sat.found_counterexample();

      json witnesses = json::array();
      for (std::size_t n : {3, 5}) {
        std::vector<TropValue> d(n, 0);
        d.back()       = 1;
        auto const fal = check_falsification(
            id, WitnessAssignment{cycle_matrix(n), TropMatrix::diagonal(d)});
        witnesses.push_back(json{{"n", n}, {"falsified", entry_json(fal)}});
      }
      out.details["witnesses"] = std::move(witnesses);

      // u2(A,B) = v2(A,B) iff A^2B^2 = B^2A^2 for a weighted cycle A and an
      // invertible diagonal B.
      std::uint64_t samples = 0, equal_cases = 0;
      bool          agree   = true;
      for (std::uint64_t s = 0; s < 1'000; ++s) {
        auto        rng = trial_rng(seed ^ 0x5eed'0005ULL, s);
        std::size_t n   = static_cast<std::size_t>(uniform_int(rng, 2, 5));
        std::vector<TropValue> weights, diag;
        for (std::size_t i = 0; i < n; ++i) {
          weights.emplace_back(uniform_int(rng, -8, 8));
          diag.emplace_back(uniform_int(rng, 0, 1));
        }
        WitnessAssignment const m{TropMatrix::permutation(Permutation::rotation(n), weights),
                                  TropMatrix::diagonal(diag)};
        bool const sides = evaluate(id.lhs(), m) == evaluate(id.rhs(), m);
        auto const a2    = m.a * m.a;
        auto const b2    = m.b * m.b;
        bool const comm  = a2 * b2 == b2 * a2;
        agree            = agree && sides == comm;
        equal_cases += sides;
        ++samples;
      }
      out.details["cancellation"] = {{"samples", samples},
                                     {"commuting_cases", equal_cases},
                                     {"agree", agree}};
      out.pass = out.pass && agree;
      return out;
    }

    CriterionResult prime5(std::uint64_t seed, unsigned threads) {
      CriterionResult out{6, "prime separation p = 5: M4 satisfies, M5 falsifies"};
      auto const      ps  = prime_separation(5);
      auto const      fal = check_falsification(ps.identity, ps.witness);
      auto const sat = check_satisfaction(ps.identity, sampler(seed, threads, 4, Shape::full, 100));
      auto diag      = to_json(ps);
      for (auto& level : diag["levels"]) {
        level.erase("A");
        level.erase("B");
      }
      out.details = {{"diagnostics", std::move(diag)},
                     {"falsified", entry_json(fal)},
                     {"sampled", sampled_json(sat)}};
      std::set<std::size_t> seen;
      bool                  levels_ok = true;
      for (auto const& level : ps.levels) {
        seen.insert(level.m);
        auto sigma = underlying_permutation(level.a_value);
        levels_ok  = levels_ok && sigma && sigma->is_full_cycle() && sigma->size() == 5
                 && is_diagonal(level.b_value) && level.b_diagonal_distinct;
      }
      out.pass = levels_ok && seen == std::set<std::size_t>{2, 3, 4} && ps.t == 62
              && !sat.found_counterexample();
      return out;
    }

    CriterionResult plactic_suite(std::uint64_t seed, unsigned threads) {
      CriterionResult out{7, "plactic monoid P4: relations, representation, UT5 separation"};
      int const       n = 4;

      bool          knuth_ok = true;
      std::uint64_t triples  = 0;
      for (int x = 1; x <= n; ++x) {
        for (int y = 1; y <= n; ++y) {
          for (int z = 1; z <= n; ++z) {
            auto word = [](int i, int j, int k) {
              return std::string{char('0' + i), char('0' + j), char('0' + k)};
            };
            if (x < y && y <= z) {
              knuth_ok = knuth_ok && Tableau::from_word(word(y, z, x)) == Tableau::from_word(word(y, x, z));
              ++triples;
            }
            if (x <= y && y < z) {
              knuth_ok = knuth_ok && Tableau::from_word(word(z, x, y)) == Tableau::from_word(word(x, z, y));
              ++triples;
            }
          }
        }
      }

      bool morphism_ok = true;
      for (std::uint64_t s = 0; s < 1'000; ++s) {
        auto rng  = trial_rng(seed ^ 0x5eed'0007ULL, s);
        auto draw = [&] {
          Word w(static_cast<std::size_t>(uniform_int(rng, 1, 6)), '1');
          for (auto& c : w) {
            c = static_cast<char>('0' + uniform_int(rng, 1, n));
          }
          return w;
        };
        Word const u = draw(), v = draw();
        auto const prod = plactic_mul(Tableau::from_word(u), Tableau::from_word(v));
        morphism_ok = morphism_ok && rho(prod.reading_word()) == rho(u) * rho(v);
      }

      std::map<Tableau, TropMatrix> classes;
      for (std::size_t len = 1; len <= 5; ++len) {
        Word w(len, '1');
        while (true) {
          auto t = Tableau::from_word(w);
          if (!classes.count(t)) {
            classes.emplace(std::move(t), rho(w));
          }
          std::size_t i = len;
          while (i > 0 && w[i - 1] == '0' + n) {
            w[i - 1] = '1';
            --i;
          }
          if (i == 0) {
            break;
          }
          ++w[i - 1];
        }
      }
      std::set<TropMatrix> images;
      for (auto const& [t, m] : classes) {
        images.insert(m);
      }
      bool const injective = images.size() == classes.size();

      SubsetIndex const index(n);
      bool              triangular = true;
      std::size_t       largest    = 0;
      std::map<int, std::size_t> blocks;
      for (Subset s : index.subsets()) {
        ++blocks[std::popcount(s)];
      }
      for (auto const& [card, size] : blocks) {
        largest = std::max(largest, size);
      }
      for (int x = 1; x <= n; ++x) {
        auto const g = rho_generator(x, n);
        triangular   = triangular && is_upper_triangular(g);
        for (std::size_t i = 0; i < g.dim(); ++i) {
          for (std::size_t j = 0; j < g.dim(); ++j) {
            if (g(i, j).is_finite()
                && std::popcount(index[i]) != std::popcount(index[j])) {
              triangular = false;
            }
          }
        }
      }

      auto const sep = p4_ut5_separation();
      PlacticSamplerConfig pcfg;
      pcfg.seed    = seed;
      pcfg.threads = threads;
      pcfg.trials  = 1'000;
      auto const sat = check_plactic_satisfaction(sep.identity, pcfg);
      auto const fal = check_falsification(sep.identity, factor_witness("abab").assignment());

      out.details = {{"knuth_triples", triples},
                     {"knuth_relations_hold", knuth_ok},
                     {"rho_morphism_samples", 1'000},
                     {"rho_morphism_holds", morphism_ok},
                     {"classes_up_to_length_5", classes.size()},
                     {"rho_injective", injective},
                     {"rho_upper_triangular_blocks", triangular},
                     {"largest_block", largest},
                     {"lifted_identity_length", expanded_length(sep.identity.lhs()).str()},
                     {"sampled", sampled_json(sat)},
                     {"falsified", entry_json(fal)}};
      out.pass = knuth_ok && morphism_ok && injective && triangular && largest == 6
              && !sat.found_counterexample() && fal.target == "M5";
      return out;
    }

    CriterionResult oracles(std::uint64_t seed) {
      CriterionResult out{8, "oracle equivalences"};
      OracleOptions   opts;
      opts.seed   = seed;
      out.details = to_json(oracle_cross_checks(opts));
      out.pass    = true;
      return out;
    }

    template <typename Fn>
    CriterionResult guarded(int id, std::string tag, Fn&& fn) {
      try {
        return fn();
      } catch (std::exception const& e) {
        return CriterionResult{id, std::move(tag), false, json{{"error", e.what()}}};
      }
    }

  }  // namespace

  std::vector<CriterionResult> reproduce_all(std::uint64_t seed, unsigned threads) {
    std::vector<CriterionResult> out;
    out.push_back(guarded(1, "Adjan identity", [&] { return adjan(seed, threads); }));
    out.push_back(guarded(2, "zur identity", [&] { return zur_example(seed, threads); }));
    out.push_back(guarded(3, "UT_n chain", [&] { return ut_chain(seed, threads); }));
    out.push_back(guarded(4, "M3/M4", [&] { return m3_m4(seed, threads); }));
    out.push_back(guarded(5, "M2 falsifier", [&] { return m2_false(seed, threads); }));
    out.push_back(guarded(6, "prime separation", [&] { return prime5(seed, threads); }));
    out.push_back(guarded(7, "plactic suite", [&] { return plactic_suite(seed, threads); }));
    out.push_back(guarded(8, "oracles", [&] { return oracles(seed); }));
    return out;
  }

  json to_json(std::vector<CriterionResult> const& results, std::uint64_t seed) {
    json        items  = json::array();
    std::size_t passed = 0;
    for (auto const& r : results) {
      items.push_back(json{{"id", r.id},
                           {"tag", r.tag},
                           {"status", r.pass ? "PASS" : "FAIL"},
                           {"details", r.details}});
      passed += r.pass;
    }
    return json{{"seed", seed},
                {"criteria", std::move(items)},
                {"passed", passed},
                {"total", results.size()}};
  }

}  // namespace tropid::cli
