#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include <tropid/serialization.hpp>

#include "reproduce.hpp"

namespace tropid::cli {

  namespace {

    struct Globals {
      std::uint64_t seed       = 42;
      std::string   out;
      std::string   max_expand = "100000";
      std::uint64_t trials     = 1000;
      std::int64_t  entry_min  = -8;
      std::int64_t  entry_max  = 8;
      std::string   neginf_prob = "1/10";
      unsigned      threads     = 0;
    };

    // Thrown by handlers to exit with a code after printing to err.
    struct Exit {
      int code;
    };

    void require_ab(std::string const& w, std::string const& what) {
      if (w.empty() || w.find_first_not_of("ab") != std::string::npos) {
        throw PreconditionFailed(what + " must be a nonempty word over {a,b}, got \"" + w
                                 + "\"");
      }
    }

    void require_digits(std::string const& w, int n) {
      if (w.empty()) {
        throw PreconditionFailed("word must be nonempty");
      }
      for (char c : w) {
        if (c < '1' || c > '0' + n) {
          throw PreconditionFailed("word must use the digits 1.." + std::to_string(n)
                                   + ", got \"" + w + "\"");
        }
      }
    }

    std::string stem(std::string const& path) {
      std::filesystem::path p(path);
      if (p.extension() == ".json") {
        p.replace_extension();
      }
      return p.string();
    }

    class Context {
     public:
      Context(Globals const& g, std::ostream& out, std::ostream& err)
          : g_(g), out_(out), err_(err) {}

      Integer max_expand() const {
        try {
          Integer v(g_.max_expand);
          if (v < 0) {
            throw std::invalid_argument("negative");
          }
          return v;
        } catch (std::exception const&) {
          throw PreconditionFailed("--max-expand must be a nonnegative integer");
        }
      }

      SamplerConfig sampler() const {
        SamplerConfig cfg;
        cfg.seed        = g_.seed;
        cfg.trials      = g_.trials;
        cfg.entry_min   = g_.entry_min;
        cfg.entry_max   = g_.entry_max;
        cfg.neginf_prob = parse_probability(g_.neginf_prob);
        cfg.threads     = g_.threads;
        if (cfg.entry_min > cfg.entry_max) {
          throw PreconditionFailed("--entry-min exceeds --entry-max");
        }
        return cfg;
      }

      // Writes j to --out, or to stdout when no --out is given.
      void emit(json const& j) const {
        if (g_.out.empty()) {
          out_ << j.dump(2) << '\n';
        } else {
          write_json_file(g_.out, j);
        }
      }

      void summarize_identity(Identity const& id) const {
        out_ << "identity " << identity_digest(id) << "\n  lhs length "
             << expanded_length(id.lhs()) << ", rhs length " << expanded_length(id.rhs())
             << '\n';
        if (expanded_length(id.lhs()) <= max_expand()
            && expanded_length(id.rhs()) <= max_expand() && expanded_length(id.lhs()) <= 200) {
          out_ << "  lhs " << expand(id.lhs()) << "\n  rhs " << expand(id.rhs()) << '\n';
        }
      }

      void write_construction(Identity const& id, WitnessAssignment const* witness,
                              json const* diagnostics = nullptr) const {
        if (g_.out.empty()) {
          json j{{"identity", to_json(id)}};
          if (witness) {
            j["witness"] = to_json(*witness);
          }
          if (diagnostics) {
            j["diagnostics"] = *diagnostics;
          }
          out_ << j.dump(2) << '\n';
          return;
        }
        write_json_file(g_.out, to_json(id));
        summarize_identity(id);
        out_ << "  wrote " << g_.out << '\n';
        if (witness) {
          auto const path = stem(g_.out) + ".witness.json";
          write_json_file(path, to_json(*witness));
          out_ << "  witness dimension " << witness->a.dim() << ", wrote " << path << '\n';
        }
        if (diagnostics) {
          auto const path = stem(g_.out) + ".diagnostics.json";
          write_json_file(path, *diagnostics);
          out_ << "  wrote " << path << '\n';
        }
      }

      Globals const& globals() const {
        return g_;
      }
      std::ostream& out() const {
        return out_;
      }
      std::ostream& err() const {
        return err_;
      }

     private:
      Globals const& g_;
      std::ostream&  out_;
      std::ostream&  err_;
    };

    std::string outcome_line(VerificationReport const& r) {
      std::ostringstream os;
      os << r.target << ": ";
      if (auto const* ce = std::get_if<MatrixCounterexample>(&r.counterexample)) {
        os << (r.method == Method::exact ? "falsified" : "counterexample at trial "
                                                             + std::to_string(ce->trial))
           << ", entry (" << ce->entry.row + 1 << "," << ce->entry.col + 1
           << "): " << ce->entry.lhs << " vs " << ce->entry.rhs;
      } else if (auto const* pe = std::get_if<PlacticCounterexample>(&r.counterexample)) {
        os << "counterexample at trial " << pe->trial << " (x = " << pe->x
           << ", y = " << pe->y << ")";
      } else {
        os << "no counterexample in " << r.trials_run << " trials (evidence, not proof)";
      }
      return os.str();
    }

    ////////////////////////////////////////////////////////////////////////
    // construct
    ////////////////////////////////////////////////////////////////////////

    struct ConstructArgs {
      std::string word;
      std::size_t n = 0;
      std::string u, v, p, q, r;
      std::optional<std::uint64_t> t;
      bool          allow_remark = false;
      std::uint64_t prime        = 5;
    };

    void add_construct(CLI::App& app, Context const& ctx, std::function<void()>& action) {
      auto* construct = app.add_subcommand("construct", "Build an identity and its witness");
      construct->require_subcommand(1);
      construct->fallthrough();
      auto args = std::make_shared<ConstructArgs>();

      auto* fw = construct->add_subcommand("factor-witness", "Factor witness matrices of a word");
      fw->add_option("--word", args->word, "Word over {a,b}")->required();
      fw->callback([&, args] {
        action = [&, args] {
          require_ab(args->word, "--word");
          auto const w = factor_witness(args->word);
          ctx.emit(to_json(w));
          if (!ctx.globals().out.empty()) {
            ctx.out() << "factor witness of " << w.word << ", dimension " << w.a.dim()
                      << ", wrote " << ctx.globals().out << '\n';
          }
        };
      });

      auto* zur = construct->add_subcommand("zur", "<waw[ab,ba], wbw[ab,ba]> for UT_n");
      zur->add_option("--word", args->word, "Word w over {a,b}")->required();
      zur->add_option("--n", args->n, "Dimension n")->required();
      zur->callback([&, args] {
        action = [&, args] {
          require_ab(args->word, "--word");
          ctx.write_construction(zur_identity(args->word, args->n), nullptr);
        };
      });

      auto* ut = construct->add_subcommand("ut-sep", "Identity separating UT_n from UT_{n+1}");
      ut->add_option("--n", args->n, "Dimension n >= 1")->required();
      ut->callback([&, args] {
        action = [&, args] {
          auto const pair = ut_separating_pair(args->n);
          ctx.write_construction(pair.identity, &pair.witness);
        };
      });

      auto* m3 = construct->add_subcommand("m3", "The 5832-letter M3 identity and M4 witness");
      m3->callback([&] {
        action = [&] {
          auto const w = m4_witness();
          ctx.write_construction(m3_identity(), &w);
        };
      });

      auto* m2 = construct->add_subcommand(
          "m2-falsifier", "M2 identity with a cycle-and-diagonal witness in M_n, n odd");
      args->n = 3;
      m2->add_option("--n", args->n, "Odd witness dimension n >= 3")->capture_default_str();
      m2->callback([&, args] {
        action = [&, args] {
          if (args->n < 3 || args->n % 2 == 0) {
            throw PreconditionFailed("--n must be odd and at least 3");
          }
          std::vector<TropValue> d(args->n, 0);
          d.back() = 1;
          WitnessAssignment const w{cycle_matrix(args->n), TropMatrix::diagonal(d)};
          ctx.write_construction(m2_falsifier_pair(), &w);
        };
      });

      auto add_words = [&](CLI::App* sub, bool with_p) {
        sub->add_option("--u", args->u, "Word u")->required();
        sub->add_option("--v", args->v, "Word v")->required();
        if (with_p) {
          sub->add_option("--p", args->p, "Word p")->required();
        }
        sub->add_option("--q", args->q, "Word q")->required();
        sub->add_option("--r", args->r, "Word r")->required();
        sub->add_option("--n", args->n, "Dimension n")->required();
        sub->add_flag("--allow-remark", args->allow_remark,
                      "Permit exponents below (n-1)^2 + 1");
      };
      auto word_expr = [](std::string const& w, char const* name) {
        require_ab(w, name);
        return WordExpr::word(w);
      };

      auto* f1 = construct->add_subcommand("fulliden-i", "Composition scheme (i)");
      add_words(f1, false);
      f1->add_option("--t", args->t, "Exponent t")->required();
      f1->callback([&, args, word_expr] {
        action = [&, args, word_expr] {
          ctx.write_construction(
              fulliden_compose_i(word_expr(args->u, "--u"), word_expr(args->v, "--v"),
                                 word_expr(args->q, "--q"), word_expr(args->r, "--r"),
                                 *args->t, args->n, args->allow_remark),
              nullptr);
        };
      });

      auto* f2 = construct->add_subcommand("fulliden-ii", "Composition scheme (ii)");
      add_words(f2, true);
      f2->add_option("--t", args->t, "Exponent t (omit for the exponent-free form)");
      f2->callback([&, args, word_expr] {
        action = [&, args, word_expr] {
          ctx.write_construction(
              fulliden_compose_ii(word_expr(args->u, "--u"), word_expr(args->v, "--v"),
                                  word_expr(args->p, "--p"), word_expr(args->q, "--q"),
                                  word_expr(args->r, "--r"), args->t, args->n,
                                  args->allow_remark),
              nullptr);
        };
      });

      auto* ind = construct->add_subcommand(
          "induct", "Recursive M_n identity from UT_k identities and the M2 identity");
      ind->add_option("--n", args->n, "Dimension n >= 3")->required();
      ind->add_option("--t", args->t, "Exponent at every level (default (k-1)^2 + 1)");
      ind->callback([&, args] {
        action = [&, args] {
          if (args->n < 3) {
            throw PreconditionFailed("--n must be at least 3");
          }
          InductConfig cfg{args->n, {}};
          for (std::size_t k = 3; k <= args->n; ++k) {
            auto pair = ut_separating_pair(k);
            cfg.levels.push_back(InductLevel{k, pair.identity.lhs(), pair.identity.rhs(),
                                             args->t.value_or((k - 1) * (k - 1) + 1)});
          }
          auto const m2 = m2_falsifier_pair();
          ctx.write_construction(induct_identity(cfg, m2.lhs(), m2.rhs()), nullptr);
        };
      });

      auto* prime = construct->add_subcommand("prime-sep",
                                              "Identity separating M_{p-1} from M_p, p prime");
      prime->add_option("--p", args->prime, "Prime p")->required();
      prime->callback([&, args] {
        action = [&, args] {
          auto const ps   = prime_separation(args->prime);
          auto const diag = to_json(ps);
          ctx.write_construction(ps.identity, &ps.witness, &diag);
          if (!ctx.globals().out.empty()) {
            for (auto const& level : ps.levels) {
              ctx.out() << "  level " << level.m << ": A "
                        << (level.a_is_full_cycle ? "p-cycle" : "NOT a p-cycle") << ", B "
                        << (level.b_diagonal_distinct ? "diagonal, distinct"
                                                      : "NOT diagonal with distinct entries")
                        << '\n';
            }
          }
        };
      });

      auto* lift = construct->add_subcommand(
          "plactic-lift", "<abuab[ab,ba], abvab[ab,ba]>; defaults to the P4 / UT5 pair");
      lift->add_option("--u", args->u, "Word u");
      lift->add_option("--v", args->v, "Word v");
      lift->add_option("--witness-word", args->word, "Factor witness for the lifted pair");
      lift->callback([&, args] {
        action = [&, args] {
          if (args->u.empty() && args->v.empty()) {
            auto const sep = p4_ut5_separation();
            ctx.write_construction(sep.identity, &sep.witness);
            return;
          }
          require_ab(args->u, "--u");
          require_ab(args->v, "--v");
          auto const id = plactic_identity_lift(args->u, args->v);
          if (args->word.empty()) {
            ctx.write_construction(id, nullptr);
          } else {
            require_ab(args->word, "--witness-word");
            auto const w = factor_witness(args->word).assignment();
            ctx.write_construction(id, &w);
          }
        };
      });
    }

    ////////////////////////////////////////////////////////////////////////
    // verify / falsify
    ////////////////////////////////////////////////////////////////////////

    struct VerifyArgs {
      std::string   identity;
      std::string   shape = "full";
      std::size_t   dim   = 2;
      std::string   expect = "satisfied";
      std::optional<bool> diagonal_neginf;
      bool          plactic      = false;
      int           plactic_n    = 4;
      std::size_t   max_word_len = 6;
      bool          timing       = false;
    };

    void add_verify(CLI::App& app, Context const& ctx, std::function<void()>& action) {
      auto  args   = std::make_shared<VerifyArgs>();
      auto* verify = app.add_subcommand("verify", "Sample assignments and compare both sides");
      verify->fallthrough();
      verify->add_option("--identity", args->identity, "Identity JSON file")->required();
      verify->add_option("--shape", args->shape, "full or ut")->capture_default_str();
      verify->add_option("--dim", args->dim, "Matrix dimension")->capture_default_str();
      verify->add_option("--expect", args->expect, "satisfied or counterexample")
          ->check(CLI::IsMember({"satisfied", "counterexample"}))
          ->capture_default_str();
      verify->add_option("--diagonal-neginf", args->diagonal_neginf,
                         "Allow -inf on the diagonal (default: full yes, ut no)");
      verify->add_flag("--plactic", args->plactic, "Sample words in the plactic monoid instead");
      verify->add_option("--plactic-n", args->plactic_n, "Plactic rank")->capture_default_str();
      verify->add_option("--max-word-len", args->max_word_len, "Plactic word length bound")
          ->capture_default_str();
      verify->add_flag("--timing", args->timing, "Include elapsed time in the report");
      verify->callback([&, args] {
        action = [&, args] {
          auto const id = identity_from_json(read_json_file(args->identity));
          VerificationReport report;
          if (args->plactic) {
            PlacticSamplerConfig cfg;
            cfg.n            = args->plactic_n;
            cfg.max_word_len = args->max_word_len;
            cfg.trials       = ctx.globals().trials;
            cfg.seed         = ctx.globals().seed;
            cfg.threads      = ctx.globals().threads;
            report           = check_plactic_satisfaction(id, cfg);
          } else {
            auto cfg            = ctx.sampler();
            cfg.shape           = parse_shape(args->shape);
            cfg.dim             = args->dim;
            cfg.diagonal_neginf = args->diagonal_neginf;
            report              = check_satisfaction(id, cfg);
          }
          ctx.emit(to_json(report, args->timing));
          if (!ctx.globals().out.empty()) {
            ctx.out() << outcome_line(report) << '\n';
          }
          bool const expected = report.found_counterexample() == (args->expect == "counterexample");
          if (!expected) {
            ctx.err() << "unexpected outcome: " << outcome_line(report) << '\n';
            throw Exit{unexpected};
          }
        };
      });
    }

    void add_falsify(CLI::App& app, Context const& ctx, std::function<void()>& action) {
      auto identity = std::make_shared<std::string>();
      auto witness  = std::make_shared<std::string>();
      auto* falsify = app.add_subcommand("falsify", "Evaluate both sides exactly at a witness");
      falsify->fallthrough();
      falsify->add_option("--identity", *identity, "Identity JSON file")->required();
      falsify->add_option("--witness", *witness,
                          "Witness JSON file, or a report holding a counterexample")
          ->required();
      falsify->callback([&, identity, witness] {
        action = [&, identity, witness] {
          auto const id = identity_from_json(read_json_file(*identity));
          auto const w  = assignment_from_json(read_json_file(*witness));
          VerificationReport report;
          try {
            report = check_falsification(id, w);
          } catch (WitnessFailed const& e) {
            ctx.err() << "witness failed: " << e.what() << '\n';
            throw Exit{unexpected};
          }
          ctx.emit(to_json(report));
          if (!ctx.globals().out.empty()) {
            ctx.out() << outcome_line(report) << '\n';
          }
        };
      });
    }

    ////////////////////////////////////////////////////////////////////////
    // plactic
    ////////////////////////////////////////////////////////////////////////

    void add_plactic(CLI::App& app, Context const& ctx, std::function<void()>& action) {
      struct Args {
        std::string word;
        int         n   = 4;
        std::size_t cap = 8;
      };
      auto  args    = std::make_shared<Args>();
      auto* plactic = app.add_subcommand("plactic", "Plactic monoid tools");
      plactic->require_subcommand(1);
      plactic->fallthrough();

      auto* canon = plactic->add_subcommand("canon", "Schensted tableau of a word");
      auto* closure = plactic->add_subcommand("closure", "All Knuth-equivalent words");
      auto* rep     = plactic->add_subcommand("rho", "Tropical representation of a word");
      for (auto* sub : {canon, closure, rep}) {
        sub->add_option("--word", args->word, "Word over the digits 1..n")->required();
        sub->add_option("--n", args->n, "Rank")->capture_default_str();
      }
      closure->add_option("--cap", args->cap, "Maximum word length")->capture_default_str();

      canon->callback([&, args] {
        action = [&, args] {
          require_digits(args->word, args->n);
          auto const t = Tableau::from_word(args->word, args->n);
          ctx.emit(json{{"word", args->word},
                        {"tableau", to_json(t)},
                        {"reading_word", t.reading_word()}});
        };
      });
      closure->callback([&, args] {
        action = [&, args] {
          require_digits(args->word, args->n);
          auto const words = knuth_closure(args->word, args->cap);
          ctx.emit(json{{"word", args->word}, {"size", words.size()}, {"class", words}});
        };
      });
      rep->callback([&, args] {
        action = [&, args] {
          require_digits(args->word, args->n);
          ctx.emit(rho_to_json(rho(args->word, args->n), args->n));
        };
      });
    }

    ////////////////////////////////////////////////////////////////////////
    // reproduce
    ////////////////////////////////////////////////////////////////////////

    void add_reproduce(CLI::App& app, Context const& ctx, std::function<void()>& action) {
      auto  all       = std::make_shared<bool>(false);
      auto* reproduce = app.add_subcommand("reproduce", "Recompute every separation result");
      reproduce->fallthrough();
      reproduce->add_flag("--all", *all, "Run every criterion")->required();
      reproduce->callback([&, all] {
        action = [&] {
          auto const seed    = ctx.globals().seed;
          auto const results = reproduce_all(seed, ctx.globals().threads);
          auto       report  = to_json(results, seed);
          std::size_t passed = 0;
          for (auto const& r : results) {
            ctx.out() << "[" << r.id << "] " << std::left << std::setw(68) << r.tag
                      << (r.pass ? "PASS" : "FAIL") << '\n';
            passed += r.pass;
          }
          ctx.out() << passed << "/" << results.size() << " passed (seed " << seed << ")\n";
          if (!ctx.globals().out.empty()) {
            write_json_file(ctx.globals().out, report);
            ctx.out() << "wrote " << ctx.globals().out << '\n';
          }
          if (passed != results.size()) {
            throw Exit{unexpected};
          }
        };
      });
    }

  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    Globals  g;
    CLI::App app{"Tropical matrix and plactic monoid semigroup identities", "tropid"};
    app.require_subcommand(1);
    app.add_option("--seed", g.seed, "Sampling seed")->capture_default_str();
    app.add_option("--out", g.out, "Output file (default: stdout)");
    app.add_option("--max-expand", g.max_expand, "Largest word expanded explicitly")
        ->capture_default_str();
    app.add_option("--trials", g.trials, "Number of sampled trials")->capture_default_str();
    app.add_option("--entry-min", g.entry_min, "Least sampled entry")->capture_default_str();
    app.add_option("--entry-max", g.entry_max, "Greatest sampled entry")->capture_default_str();
    app.add_option("--neginf-prob", g.neginf_prob, "Probability of -inf, p/q or decimal")
        ->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0: hardware)")->capture_default_str();

    Context               ctx(g, out, err);
    std::function<void()> action;
    add_construct(app, ctx, action);
    add_verify(app, ctx, action);
    add_falsify(app, ctx, action);
    add_plactic(app, ctx, action);
    add_reproduce(app, ctx, action);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      return app.exit(e, out, err) == 0 ? ok : usage;
    }

    try {
      action();
      return ok;
    } catch (Exit const& e) {
      return e.code;
    } catch (WitnessFailed const& e) {
      err << "witness failed: " << e.what() << '\n';
      return unexpected;
    } catch (OracleFailure const& e) {
      err << "oracle failure: " << e.what() << '\n';
      return unexpected;
    } catch (ExpansionTooLarge const& e) {
      err << "error: " << e.what() << " (raise --max-expand)\n";
      return usage;
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return usage;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << '\n';
      return usage;
    }
  }

}  // namespace tropid::cli
