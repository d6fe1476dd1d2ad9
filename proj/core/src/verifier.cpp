#include "tropid/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "tropid/serialization.hpp"

namespace tropid {

  std::string_view to_string(Shape s) noexcept {
    return s == Shape::full ? "full" : "ut";
  }

  Shape parse_shape(std::string_view s) {
    if (s == "full") {
      return Shape::full;
    }
    if (s == "ut" || s == "upper-triangular") {
      return Shape::upper_triangular;
    }
    throw PreconditionFailed("unknown shape \"" + std::string(s)
                             + "\" (expected full or ut)");
  }

  namespace {

    std::uint64_t parse_u64(std::string_view s, std::string_view what) {
      std::uint64_t v   = 0;
      auto [ptr, ec]    = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw PreconditionFailed("bad " + std::string(what) + " \"" + std::string(s)
                                 + "\"");
      }
      return v;
    }

  }  // namespace

  Probability parse_probability(std::string_view s) {
    Probability p;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      p.num = parse_u64(s.substr(0, slash), "probability");
      p.den = parse_u64(s.substr(slash + 1), "probability");
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto const whole = s.substr(0, dot);
      auto const frac  = s.substr(dot + 1);
      if (frac.size() > 18) {
        throw PreconditionFailed("probability has too many decimals");
      }
      p.den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) {
        p.den *= 10;
      }
      p.num = (whole.empty() ? 0 : parse_u64(whole, "probability")) * p.den
            + (frac.empty() ? 0 : parse_u64(frac, "probability"));
    } else {
      p.num = parse_u64(s, "probability");
      p.den = 1;
    }
    if (p.den == 0 || p.num > p.den) {
      throw PreconditionFailed("probability must lie in [0, 1]");
    }
    auto const g = std::gcd(p.num, p.den);
    p.num /= g;
    p.den /= g;
    return p;
  }

  ////////////////////////////////////////////////////////////////////////
  // Sampling
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
      auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x); };
      auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
      std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(index), hi(index)};
      return std::mt19937_64(seq);
    }

  }  // namespace

  std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return stream_rng(seed, 0, trial);
  }

  std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) {
      throw PreconditionFailed("empty sampling range");
    }
    auto const span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) {
      return static_cast<std::int64_t>(rng());
    }
    auto const range = span + 1;
    auto const limit = std::numeric_limits<std::uint64_t>::max()
                     - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
      x = rng();
    } while (x >= limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
  }

  bool bernoulli(std::mt19937_64& rng, Probability p) {
    if (p.num == 0) {
      return false;
    }
    if (p.num >= p.den) {
      return true;
    }
    return static_cast<std::uint64_t>(
               uniform_int(rng, 0, static_cast<std::int64_t>(p.den - 1)))
         < p.num;
  }

  TropMatrix sample_matrix(SamplerConfig const& cfg, std::mt19937_64& rng) {
    if (cfg.dim == 0) {
      throw PreconditionFailed("sampler dimension must be positive");
    }
    bool const diag_neginf = cfg.allows_diagonal_neginf();
    TropMatrix m(cfg.dim);
    for (std::size_t i = 0; i < cfg.dim; ++i) {
      for (std::size_t j = 0; j < cfg.dim; ++j) {
        if (cfg.shape == Shape::upper_triangular && j < i) {
          continue;
        }
        if ((i != j || diag_neginf) && bernoulli(rng, cfg.neginf_prob)) {
          continue;
        }
        m(i, j) = uniform_int(rng, cfg.entry_min, cfg.entry_max);
      }
    }
    return m;
  }

  WitnessAssignment sample_assignment(SamplerConfig const& cfg, std::uint64_t trial) {
    auto rng = trial_rng(cfg.seed, trial);
    auto a   = sample_matrix(cfg, rng);
    auto b   = sample_matrix(cfg, rng);
    return {std::move(a), std::move(b)};
  }

  std::optional<EntryDifference> first_differing_entry(TropMatrix const& x,
                                                       TropMatrix const& y) {
    if (x.dim() != y.dim()) {
      throw DimensionMismatch("cannot compare matrices of different dimensions");
    }
    for (std::size_t i = 0; i < x.dim(); ++i) {
      for (std::size_t j = 0; j < x.dim(); ++j) {
        if (x(i, j) != y(i, j)) {
          return EntryDifference{i, j, x(i, j), y(i, j)};
        }
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Trials
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Runs fn(0), ..., fn(count - 1) across threads and returns the result
    // of the lowest index for which fn returned a value. Every index below
    // that one is evaluated, so the outcome does not depend on scheduling.
    template <typename T, typename Fn>
    std::optional<std::pair<std::uint64_t, T>> run_trials(std::uint64_t count,
                                                          unsigned      threads,
                                                          Fn const&     fn) {
      if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
      }
      threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));

      if (threads <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) {
          if (auto r = fn(i)) {
            return std::pair{i, std::move(*r)};
          }
        }
        return std::nullopt;
      }

      std::atomic<std::uint64_t>                  next{0};
      std::atomic<std::uint64_t>                  best{count};
      std::mutex                                  mutex;
      std::optional<std::pair<std::uint64_t, T>>  found;
      std::exception_ptr                          error;
      std::uint64_t                               error_index = count;

      auto worker = [&] {
        while (true) {
          auto const i = next.fetch_add(1);
          if (i >= count || i >= best.load()) {
            return;
          }
          try {
            if (auto r = fn(i)) {
              std::lock_guard lock(mutex);
              if (i < best.load()) {
                best.store(i);
                found.emplace(i, std::move(*r));
              }
            }
          } catch (...) {
            std::lock_guard lock(mutex);
            if (i < error_index) {
              error_index = i;
              error       = std::current_exception();
            }
            if (i < best.load()) {
              best.store(i);
            }
          }
        }
      };

      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
      }
      for (auto& t : pool) {
        t.join();
      }
      if (error && (!found || error_index < found->first)) {
        std::rethrow_exception(error);
      }
      return found;
    }

    void check_alphabet(Identity const& id) {
      for (auto const* side : {&id.lhs(), &id.rhs()}) {
        Integer other = side->length() - side->count('a') - side->count('b');
        if (other != 0) {
          throw PreconditionFailed("identity alphabet must be {a, b}");
        }
      }
    }

  }  // namespace

  std::string identity_digest(Identity const& id) {
    auto const text = to_json(id).dump();
    unsigned char     md[EVP_MAX_MD_SIZE];
    unsigned int      len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
      throw Error("SHA-256 digest failed");
    }
    static char const hex[] = "0123456789abcdef";
    std::string       out;
    for (unsigned i = 0; i < len; ++i) {
      out += hex[md[i] >> 4];
      out += hex[md[i] & 15];
    }
    return "sha256:" + out;
  }

  VerificationReport check_satisfaction(Identity const& id, SamplerConfig const& cfg) {
    check_alphabet(id);
    if (cfg.entry_min > cfg.entry_max) {
      throw PreconditionFailed("entry_min exceeds entry_max");
    }
    auto const start = std::chrono::steady_clock::now();

    VerificationReport report;
    report.identity_digest = identity_digest(id);
    report.target = std::string(cfg.shape == Shape::full ? "M" : "UT") + std::to_string(cfg.dim);
    report.method  = Method::sampled;
    report.sampler = cfg;

    auto found = run_trials<MatrixCounterexample>(
        cfg.trials, cfg.threads,
        [&](std::uint64_t trial) -> std::optional<MatrixCounterexample> {
          auto assign = sample_assignment(cfg, trial);
          auto lhs    = evaluate(id.lhs(), assign);
          auto rhs    = evaluate(id.rhs(), assign);
          if (auto diff = first_differing_entry(lhs, rhs)) {
            return MatrixCounterexample{trial, std::move(assign), std::move(*diff)};
          }
          return std::nullopt;
        });

    if (found) {
      report.trials_run     = found->first + 1;
      report.counterexample = std::move(found->second);
    } else {
      report.trials_run = cfg.trials;
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
  }

  VerificationReport check_falsification(Identity const&          id,
                                         WitnessAssignment const& witness) {
    check_alphabet(id);
    if (witness.a.dim() != witness.b.dim() || witness.a.dim() == 0) {
      throw DimensionMismatch("witness matrices must be square of one positive dimension");
    }
    auto const start = std::chrono::steady_clock::now();

    VerificationReport report;
    report.identity_digest = identity_digest(id);
    report.target          = "M" + std::to_string(witness.a.dim());
    report.method          = Method::exact;
    report.trials_run      = 1;

    auto lhs  = evaluate(id.lhs(), witness);
    auto rhs  = evaluate(id.rhs(), witness);
    auto diff = first_differing_entry(lhs, rhs);
    if (!diff) {
      throw WitnessFailed("both sides agree under the witness");
    }
    report.counterexample = MatrixCounterexample{0, witness, std::move(*diff)};
    report.elapsed        = std::chrono::steady_clock::now() - start;
    return report;
  }

  VerificationReport check_plactic_satisfaction(Identity const&             id,
                                                PlacticSamplerConfig const& cfg) {
    check_alphabet(id);
    if (cfg.n < 1 || cfg.n > 9 || cfg.max_word_len == 0) {
      throw PreconditionFailed("plactic sampling needs 1 <= n <= 9 and max_word_len >= 1");
    }
    auto const start = std::chrono::steady_clock::now();

    VerificationReport report;
    report.identity_digest = identity_digest(id);
    report.target          = "P" + std::to_string(cfg.n);
    report.method          = Method::sampled;
    report.plactic_sampler = cfg;

    auto sample_word = [&](std::mt19937_64& rng) {
      auto len = static_cast<std::size_t>(
          uniform_int(rng, 1, static_cast<std::int64_t>(cfg.max_word_len)));
      Word w;
      for (std::size_t i = 0; i < len; ++i) {
        w += static_cast<char>('0' + uniform_int(rng, 1, cfg.n));
      }
      return w;
    };
    auto rho_mul = [](TropMatrix const& x, TropMatrix const& y) { return x * y; };

    auto found = run_trials<PlacticCounterexample>(
        cfg.trials, cfg.threads,
        [&](std::uint64_t trial) -> std::optional<PlacticCounterexample> {
          auto rng = trial_rng(cfg.seed, trial);
          Word x   = sample_word(rng);
          Word y   = sample_word(rng);

          Assignment<Tableau> tabs{Tableau::from_word(x, cfg.n), Tableau::from_word(y, cfg.n)};
          auto lhs = evaluate_plactic(id.lhs(), tabs);
          auto rhs = evaluate_plactic(id.rhs(), tabs);

          Assignment<TropMatrix> mats{rho(x, cfg.n), rho(y, cfg.n)};
          bool const rho_equal = evaluate(id.lhs(), mats, rho_mul)
                              == evaluate(id.rhs(), mats, rho_mul);
          if (rho_equal != (lhs == rhs)) {
            throw OracleFailure("Schensted and rho disagree on trial "
                                + std::to_string(trial) + " (x = " + x + ", y = " + y
                                + ")");
          }
          if (lhs != rhs) {
            return PlacticCounterexample{trial, x, y, std::move(lhs), std::move(rhs)};
          }
          return std::nullopt;
        });

    if (found) {
      report.trials_run     = found->first + 1;
      report.counterexample = std::move(found->second);
    } else {
      report.trials_run = cfg.trials;
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Oracles
  ////////////////////////////////////////////////////////////////////////

  namespace {

    enum : std::uint64_t {
      path_stream = 1,
      diagonal_stream,
      restriction_stream,
    };

    std::string describe(TropMatrix const& m) {
      std::ostringstream os;
      os << m;
      return os.str();
    }

    // All words over {a, b} of length 1..max_len in shortlex order.
    std::vector<Word> short_words(std::size_t max_len) {
      std::vector<Word> out;
      for (std::size_t k = 1; k <= max_len; ++k) {
        auto ws = words_of_length(k);
        out.insert(out.end(), ws.begin(), ws.end());
      }
      return out;
    }

    // v * m for a row vector v.
    std::vector<TropValue> row_times(std::vector<TropValue> const& v, TropMatrix const& m) {
      std::vector<TropValue> out(m.dim());
      for (std::size_t i = 0; i < m.dim(); ++i) {
        if (v[i].is_neg_inf()) {
          continue;
        }
        for (std::size_t j = 0; j < m.dim(); ++j) {
          out[j] = oplus(out[j], otimes(v[i], m(i, j)));
        }
      }
      return out;
    }

  }  // namespace

  std::uint64_t path_product_oracle(OracleOptions const& opts) {
    std::uint64_t cases = 0;
    for (std::size_t dim = 1; dim <= opts.path_max_dim; ++dim) {
      SamplerConfig cfg;
      cfg.dim = dim;
      for (std::size_t s = 0; s < opts.path_seeds; ++s) {
        auto rng = stream_rng(opts.seed, path_stream, dim * 1'000'000 + s);
        WitnessAssignment const assign{sample_matrix(cfg, rng), sample_matrix(cfg, rng)};
        CompoundDigraph const   graph(assign.a, assign.b);

        // Depth-first over words, extending the product one letter at a time.
        std::vector<std::pair<Word, TropMatrix>> stack{{"a", assign.a}, {"b", assign.b}};
        while (!stack.empty()) {
          auto [w, prod] = std::move(stack.back());
          stack.pop_back();
          for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
              auto const dp = graph.max_weight_labeled_path(w, i, j);
              if (dp != prod(i, j)) {
                throw OracleFailure("path DP " + dp.str() + " != product "
                                    + prod(i, j).str() + " for word " + w + " at ("
                                    + std::to_string(i + 1) + "," + std::to_string(j + 1)
                                    + ") with A = " + describe(assign.a)
                                    + ", B = " + describe(assign.b));
              }
              ++cases;
            }
          }
          if (w.size() < opts.path_max_word) {
            stack.emplace_back(w + 'b', prod * assign.b);
            stack.emplace_back(w + 'a', std::move(prod) * assign.a);
          }
        }
      }
    }
    return cases;
  }

  std::uint64_t knuth_schensted_oracle(OracleOptions const& opts) {
    int const     n     = opts.knuth_n;
    std::uint64_t cases = 0;
    for (std::size_t len = 1; len <= opts.knuth_max_len; ++len) {
      std::map<Tableau, std::set<Word>> classes;
      Word                              w(len, '1');
      while (true) {
        classes[Tableau::from_word(w, n)].insert(w);
        ++cases;
        std::size_t i = len;
        while (i > 0 && w[i - 1] == static_cast<char>('0' + n)) {
          w[i - 1] = '1';
          --i;
        }
        if (i == 0) {
          break;
        }
        ++w[i - 1];
      }
      for (auto const& [tab, words] : classes) {
        auto const closure = knuth_closure(*words.begin(), opts.knuth_max_len);
        if (closure != words) {
          throw OracleFailure("Knuth class of " + *words.begin() + " has "
                              + std::to_string(closure.size())
                              + " words but its insertion tableau is shared by "
                              + std::to_string(words.size()));
        }
      }
    }
    return cases;
  }

  std::uint64_t factor_witness_oracle(OracleOptions const& opts) {
    auto const    ts    = short_words(opts.witness_max_t);
    std::uint64_t cases = 0;
    for (std::size_t len = 1; len <= opts.witness_max_len; ++len) {
      for (auto const& w : words_of_length(len)) {
        auto const fw = opts.witness_builder(w);
        auto const ab = fw.a * fw.b;
        auto const ba = fw.b * fw.a;
        auto const n  = fw.a.dim() - 1;

        auto corner = [&](std::string_view t) {
          std::vector<TropValue> v(fw.a.dim());
          v[0] = 0;
          for (char c : t) {
            v = row_times(v, c == 'a' ? ab : ba);
          }
          return v[n];
        };

        auto const top = corner(w);
        for (auto const& t : ts) {
          auto const value  = corner(t);
          bool const factor = is_factor(w, t);
          if (value > top || (value == top) != factor) {
            throw OracleFailure("factor witness of " + w + ": corner of " + t + " is "
                                + value.str() + " against " + top.str()
                                + (factor ? " (factor)" : " (not a factor)"));
          }
          ++cases;
        }
      }
    }
    return cases;
  }

  std::uint64_t diagonal_commutation_oracle(OracleOptions const& opts) {
    SamplerConfig cfg;
    cfg.shape = Shape::upper_triangular;
    for (std::size_t s = 0; s < opts.diagonal_samples; ++s) {
      cfg.dim  = 1 + s % opts.diagonal_max_dim;
      auto rng = stream_rng(opts.seed, diagonal_stream, s);
      auto a   = sample_matrix(cfg, rng);
      auto b   = sample_matrix(cfg, rng);
      if (diagonal(a * b) != diagonal(b * a)) {
        throw OracleFailure("diag(AB) != diag(BA) for A = " + describe(a)
                            + ", B = " + describe(b));
      }
    }
    return opts.diagonal_samples;
  }

  std::uint64_t restriction_oracle(OracleOptions const& opts) {
    std::uint64_t cases = 0;
    SamplerConfig cfg;
    for (std::size_t s = 0; s < opts.restriction_samples; ++s) {
      auto rng = stream_rng(opts.seed, restriction_stream, s);
      cfg.dim  = static_cast<std::size_t>(uniform_int(rng, 1, 5));
      WitnessAssignment const full{sample_matrix(cfg, rng), sample_matrix(cfg, rng)};
      auto const len = static_cast<std::size_t>(uniform_int(rng, 1, 8));
      Word       w;
      for (std::size_t k = 0; k < len; ++k) {
        w += uniform_int(rng, 0, 1) ? 'b' : 'a';
      }
      auto const from = static_cast<std::size_t>(uniform_int(rng, 0, cfg.dim - 1));
      auto const to   = static_cast<std::size_t>(uniform_int(rng, 0, cfg.dim - 1));

      auto const path = CompoundDigraph(full.a, full.b).best_labeled_path(w, from, to);
      if (!path) {
        continue;
      }
      std::vector<std::size_t> nodes = path->nodes;
      std::sort(nodes.begin(), nodes.end());
      nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

      auto const sub_a = principal_submatrix(full.a, nodes);
      auto const sub_b = principal_submatrix(full.b, nodes);
      auto const whole = evaluate(WordExpr::word(w), full);
      auto const part  = evaluate(WordExpr::word(w), {sub_a.matrix, sub_b.matrix});

      auto pos = [&](std::size_t node) {
        return static_cast<std::size_t>(
            std::lower_bound(nodes.begin(), nodes.end(), node) - nodes.begin());
      };
      if (part(pos(from), pos(to)) != whole(from, to)
          || whole(from, to) != TropValue(path->weight)) {
        throw OracleFailure("restriction to a maximal path changed entry ("
                            + std::to_string(from + 1) + "," + std::to_string(to + 1)
                            + ") of " + w);
      }
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          if (part(i, j) > whole(nodes[i], nodes[j])) {
            throw OracleFailure("restricted entry exceeds full entry for " + w);
          }
        }
      }
      ++cases;
    }
    return cases;
  }

  OracleReport oracle_cross_checks(OracleOptions const& opts) {
    OracleReport report;
    report.seed = opts.seed;
    report.results.push_back({"path-dp-vs-product", path_product_oracle(opts)});
    report.results.push_back({"knuth-vs-schensted", knuth_schensted_oracle(opts)});
    report.results.push_back({"factor-witness-corner", factor_witness_oracle(opts)});
    report.results.push_back({"ut-diagonal-commutation", diagonal_commutation_oracle(opts)});
    report.results.push_back({"restriction", restriction_oracle(opts)});
    return report;
  }

}  // namespace tropid
