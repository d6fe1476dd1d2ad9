// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <tropid/constructors.hpp>
#include <tropid/plactic.hpp>
#include <tropid/serialization.hpp>
#include <tropid/verifier.hpp>

#include "cli.hpp"
#include "support.hpp"

using namespace tropid;

namespace {

  struct Check {
    std::ostringstream notes;
    bool               ok = true;

    void require(bool cond, std::string const& what) {
      if (!cond) {
        ok = false;
        notes << (notes.tellp() > 0 ? "; " : "") << what;
      }
    }
  };

  SamplerConfig sampler(std::size_t dim, Shape shape, std::uint64_t trials) {
    SamplerConfig cfg;
    cfg.dim    = dim;
    cfg.shape  = shape;
    cfg.trials = trials;
    cfg.seed   = 42;
    return cfg;
  }

  bool passes(Identity const& id, SamplerConfig const& cfg) {
    auto r = check_satisfaction(id, cfg);
    return !r.found_counterexample() && r.trials_run == cfg.trials;
  }

  std::pair<oracle::Mat, oracle::Mat> exact(Identity const& id, WitnessAssignment const& w) {
    auto a = oracle::from(w.a), b = oracle::from(w.b);
    return {oracle::eval(expand(id.lhs()), a, b), oracle::eval(expand(id.rhs()), a, b)};
  }

  void adjan(Check& c) {
    auto const pair = ut_separating_pair(2);
    c.require(expand(pair.identity.lhs()) == "abbaababba", "lhs is not abbaababba");
    c.require(expand(pair.identity.rhs()) == "abbabaabba", "rhs is not abbabaabba");
    c.require(passes(pair.identity, sampler(2, Shape::upper_triangular, 10'000)),
              "counterexample in UT2");

    auto const w = factor_witness("aa");
    auto const a = oracle::from(w.a), b = oracle::from(w.b);
    auto const u = oracle::path_max(expand(pair.identity.lhs()), a, b, 0, 2);
    auto const v = oracle::path_max(expand(pair.identity.rhs()), a, b, 0, 2);
    c.require(u == -1 && v == -2, "path enumeration does not give -1 vs -2");

    auto const r  = check_falsification(pair.identity, w.assignment());
    auto const ce = std::get<MatrixCounterexample>(r.counterexample);
    c.require(ce.entry.row == 0 && ce.entry.col == 2 && ce.entry.lhs == TropValue(-1)
                  && ce.entry.rhs == TropValue(-2),
              "library evaluation disagrees with path enumeration");
  }

  void example_ut3(Check& c) {
    auto const id = zur_identity("abbaab", 3);
    c.require(passes(id, sampler(3, Shape::upper_triangular, 10'000)), "counterexample in UT3");
    auto const [x, y] = exact(id, factor_witness("bab").assignment());
    c.require(x[0][3] != y[0][3], "entry (1,4) agrees");
  }

  void ut_chain(Check& c) {
    for (std::size_t n = 1; n <= 6; ++n) {
      auto const pair = ut_separating_pair(n);
      auto const tag  = "n = " + std::to_string(n) + ": ";
      c.require(passes(pair.identity, sampler(n, Shape::upper_triangular, 1000)),
                tag + "counterexample in UT_n");
      c.require(pair.witness.a.dim() == n + 1 && is_upper_triangular(pair.witness.a)
                    && is_upper_triangular(pair.witness.b),
                tag + "witness not in UT_{n+1}");
      auto const [x, y] = exact(pair.identity, pair.witness);
      c.require(x != y, tag + "witness does not falsify");
      if (n >= 4) {
        auto const base = separating_base_word(n);
        c.require(all_factors_present(base, n - 1), tag + "missing factor");
        for (auto const* side : {&pair.inner_lhs, &pair.inner_rhs}) {
          c.require(!has_run(*side, 'a', n) && !has_run(*side, 'b', n), tag + "run of length n");
        }
        c.require(to_json(zur_identity(base, n)) == to_json(pair.identity),
                  tag + "not the doubled identity of its base word");
      }
    }
  }

  void m3(Check& c) {
    auto const id = m3_identity();
    c.require(id.lhs().length() == 5832 && id.rhs().length() == 5832, "length is not 5832");
    c.require(passes(id, sampler(3, Shape::full, 1000)), "counterexample in M3");
    auto const [x, y] = exact(id, m4_witness());
    c.require(x != y, "M4 witness does not falsify");
  }

  void m2(Check& c) {
    auto const id = m2_falsifier_pair();
    c.require(passes(id, sampler(2, Shape::full, 10'000)), "counterexample in M2");
    for (std::size_t n : {3, 5}) {
      std::vector<TropValue> d(n, 0);
      d.back()          = 1;
      auto const [x, y] = exact(id, {cycle_matrix(n), TropMatrix::diagonal(d)});
      c.require(x != y, "cycle witness fails for n = " + std::to_string(n));
    }

    std::mt19937_64                    rng(42);
    std::uniform_int_distribution<int> dim(2, 5), weight(-8, 8), bit(0, 1);
    auto const                         lhs = expand(id.lhs()), rhs = expand(id.rhs());
    for (int trial = 0; trial < 1000; ++trial) {
      std::size_t const n = dim(rng);
      oracle::Mat       a(n, std::vector<oracle::Val>(n)), b = a;
      for (std::size_t i = 0; i < n; ++i) {
        a[i][(i + 1) % n] = weight(rng);
        b[i][i]           = bit(rng);
      }
      bool const sides = oracle::eval(lhs, a, b) == oracle::eval(rhs, a, b);
      bool const sq    = oracle::eval("aabb", a, b) == oracle::eval("bbaa", a, b);
      if (sides != sq) {
        c.require(false, "cancellation fails at trial " + std::to_string(trial));
        break;
      }
    }
  }

  void prime5(Check& c) {
    auto const sep = prime_separation(5);
    c.require(sep.levels.size() == 3, "expected three levels");
    for (auto const& level : sep.levels) {
      auto const tag   = "level " + std::to_string(level.m) + ": ";
      auto const sigma = underlying_permutation(level.a_value);
      c.require(sigma && sigma->is_full_cycle(), tag + "A is not a 5-cycle");
      std::set<Integer> diag;
      for (auto const& d : diagonal(level.b_value)) {
        if (d.is_finite()) {
          diag.insert(d.value());
        }
      }
      c.require(is_diagonal(level.b_value) && diag.size() == 5, tag + "B diagonal not distinct");
    }
    c.require(evaluate(sep.identity.lhs(), sep.witness) != evaluate(sep.identity.rhs(), sep.witness),
              "sides agree in M5");
    c.require(passes(sep.identity, sampler(4, Shape::full, 100)), "counterexample in M4");
  }

  void plactic(Check& c) {
    for (int x = 1; x <= 4; ++x) {
      for (int y = 1; y <= 4; ++y) {
        for (int z = 1; z <= 4; ++z) {
          auto w = [](int p, int q, int r) {
            return Tableau::from_word(std::string{char('0' + p), char('0' + q), char('0' + r)});
          };
          // x < y <= z: yzx = yxz; x <= y < z: zxy = xzy
          if (x < y && y <= z) {
            c.require(w(y, z, x) == w(y, x, z), "first Knuth relation");
          }
          if (x <= y && y < z) {
            c.require(w(z, x, y) == w(x, z, y), "second Knuth relation");
          }
        }
      }
    }

    std::mt19937_64                    rng(42);
    std::uniform_int_distribution<int> len(1, 6), letter(1, 4);
    auto random_word = [&] {
      std::string s;
      for (int i = len(rng); i > 0; --i) {
        s += char('0' + letter(rng));
      }
      return s;
    };
    for (int i = 0; i < 1000; ++i) {
      auto x = random_word(), y = random_word();
      if (rho(x + y) != rho(x) * rho(y)) {
        c.require(false, "rho is not a morphism on " + x + ", " + y);
        break;
      }
    }

    std::map<TropMatrix, Tableau> seen;
    std::vector<std::string>      words{""};
    for (int k = 1; k <= 5; ++k) {
      std::vector<std::string> next;
      for (auto const& w : words) {
        for (char ch = '1'; ch <= '4'; ++ch) {
          next.push_back(w + ch);
        }
      }
      words = std::move(next);
      for (auto const& w : words) {
        auto [it, fresh] = seen.emplace(rho(w), Tableau::from_word(w));
        if (!fresh && it->second != Tableau::from_word(w)) {
          c.require(false, "rho identifies distinct tableaux at " + w);
        }
      }
    }
    c.require(seen.size() == 440, "expected 440 elements from words of length <= 5");

    std::size_t largest = 0;
    for (int x = 1; x <= 4; ++x) {
      auto const m = rho_generator(x);
      c.require(is_upper_triangular(m), "generator not upper triangular");
      SubsetIndex const index(4);
      std::map<int, std::size_t> blocks;
      for (auto s : index.subsets()) {
        ++blocks[std::popcount(s)];
      }
      for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
          if (m(i, j).is_finite() && std::popcount(index[i]) != std::popcount(index[j])) {
            c.require(false, "entry outside the cardinality blocks");
          }
        }
      }
      for (auto const& [k, size] : blocks) {
        largest = std::max(largest, size);
      }
    }
    c.require(largest == 6, "largest block is not 6");

    auto const pair = p4_ut5_separation();
    PlacticSamplerConfig cfg;
    cfg.trials = 1000;
    cfg.seed   = 42;
    c.require(!check_plactic_satisfaction(pair.identity, cfg).found_counterexample(),
              "counterexample in P4");
    auto const [x, y] = exact(pair.identity, factor_witness("abab").assignment());
    c.require(x[0][4] != y[0][4], "abab witness does not falsify");
  }

  void oracles(Check& c) {
    OracleOptions opts;
    auto const    r = oracle_cross_checks(opts);
    c.require(r.results.size() == 5, "missing oracle results");
  }

  void determinism(Check& c) {
    auto const dir = oracle::temp_dir("acceptance");
    std::vector<std::string> contents;
    for (auto const* name : {"first.json", "second.json"}) {
      auto const         path = (dir / name).string();
      std::ostringstream out, err;
      int code = cli::run({"reproduce", "--all", "--seed", "42", "--out", path}, out, err);
      c.require(code == cli::ok, std::string("reproduce exited with ") + std::to_string(code));
      std::ifstream      in(path, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      contents.push_back(buf.str());
    }
    c.require(!contents[0].empty() && contents[0] == contents[1], "reports differ");
  }

}  // namespace

int main() {
  struct Criterion {
    int                         id;
    char const*                 name;
    double                      limit_s;
    std::function<void(Check&)> run;
  };
  std::vector<Criterion> const criteria{
      {1, "adjan-ut2", 5, adjan},        {2, "example-ut3", 5, example_ut3},
      {3, "ut-chain", 60, ut_chain},     {4, "m3-m4", 60, m3},
      {5, "m2-falsifier", 30, m2},       {6, "prime-5", 600, prime5},
      {7, "plactic", 300, plactic},      {8, "oracles", 300, oracles},
      {9, "determinism", 600, determinism},
  };

  int failed = 0;
  for (auto const& crit : criteria) {
    Check      c;
    auto const start = std::chrono::steady_clock::now();
    try {
      crit.run(c);
    } catch (std::exception const& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    double const secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(secs < crit.limit_s, "over the time limit");
    failed += !c.ok;
    std::cout << "criterion " << crit.id << " " << std::left << std::setw(14) << crit.name
              << (c.ok ? "PASS" : "FAIL") << "  " << std::fixed << std::setprecision(2) << secs
              << " s (limit " << std::setprecision(0) << crit.limit_s << " s)";
    if (!c.ok) {
      std::cout << "  " << c.notes.str();
    }
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
