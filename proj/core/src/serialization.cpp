#include "tropid/serialization.hpp"

#include <fstream>
#include <limits>

namespace tropid {

  namespace {

    json integer_to_json(Integer const& v) {
      if (v >= std::numeric_limits<std::int64_t>::min()
          && v <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(v);
      }
      return v.str();
    }

    Integer integer_from_json(json const& j) {
      if (j.is_number_integer()) {
        return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>())
                                      : Integer(j.get<std::int64_t>());
      }
      if (j.is_string()) {
        try {
          return Integer(j.get<std::string>());
        } catch (std::exception const&) {
          throw FormatError("not an integer: " + j.dump());
        }
      }
      throw FormatError("expected an integer, got " + j.dump());
    }

    std::uint64_t exponent_from_json(json const& j) {
      Integer v = integer_from_json(j);
      if (v < 1 || v > std::numeric_limits<std::uint64_t>::max()) {
        throw FormatError("exponent out of range: " + j.dump());
      }
      return static_cast<std::uint64_t>(v);
    }

    json const& field(json const& j, char const* name) {
      if (!j.is_object() || !j.contains(name)) {
        throw FormatError(std::string("missing field \"") + name + "\"");
      }
      return j.at(name);
    }

    json position(std::size_t row, std::size_t col) {
      return json::array({row + 1, col + 1});
    }

  }  // namespace

  json to_json(TropValue const& x) {
    return x.is_finite() ? integer_to_json(x.value()) : json("-inf");
  }

  TropValue trop_value_from_json(json const& j) {
    if (j.is_string() && j.get<std::string>() == "-inf") {
      return neg_inf;
    }
    return integer_from_json(j);
  }

  json to_json(TropMatrix const& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.dim(); ++j) {
        row.push_back(to_json(m(i, j)));
      }
      rows.push_back(std::move(row));
    }
    return json{{"dim", m.dim()}, {"entries", std::move(rows)}};
  }

  TropMatrix matrix_from_json(json const& j) {
    auto const  dim  = field(j, "dim").get<std::size_t>();
    auto const& rows = field(j, "entries");
    if (!rows.is_array() || rows.size() != dim) {
      throw FormatError("matrix entries must have dim rows");
    }
    TropMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      if (!rows[r].is_array() || rows[r].size() != dim) {
        throw FormatError("matrix row " + std::to_string(r + 1)
                          + " must have dim entries");
      }
      for (std::size_t c = 0; c < dim; ++c) {
        m(r, c) = trop_value_from_json(rows[r][c]);
      }
    }
    return m;
  }

  json to_json(WordExpr const& e) {
    switch (e.kind()) {
      case WordExpr::Kind::word:
        if (e.letters().size() == 1) {
          return json{{"t", "let"}, {"v", e.letters()}};
        }
        return json{{"t", "word"}, {"v", e.letters()}};
      case WordExpr::Kind::concat: {
        json items = json::array();
        for (auto const& item : e.items()) {
          items.push_back(to_json(item));
        }
        return json{{"t", "cat"}, {"items", std::move(items)}};
      }
      case WordExpr::Kind::power:
        return json{{"t", "pow"},
                    {"base", to_json(e.base())},
                    {"exp", std::to_string(e.exponent())}};
      case WordExpr::Kind::subst:
        return json{{"t", "sub"},
                    {"target", to_json(e.target())},
                    {"a", to_json(e.image_a())},
                    {"b", to_json(e.image_b())}};
    }
    throw Error("unreachable word expression kind");
  }

  WordExpr expr_from_json(json const& j) {
    auto const tag = field(j, "t").get<std::string>();
    try {
      if (tag == "let") {
        auto v = field(j, "v").get<std::string>();
        if (v.size() != 1) {
          throw FormatError("\"let\" needs a single letter");
        }
        return WordExpr::letter(v[0]);
      }
      if (tag == "word") {
        return WordExpr::word(field(j, "v").get<std::string>());
      }
      if (tag == "cat") {
        std::vector<WordExpr> items;
        for (auto const& item : field(j, "items")) {
          items.push_back(expr_from_json(item));
        }
        return WordExpr::concat(std::move(items));
      }
      if (tag == "pow") {
        return WordExpr::power(expr_from_json(field(j, "base")),
                               exponent_from_json(field(j, "exp")));
      }
      if (tag == "sub") {
        return WordExpr::subst(expr_from_json(field(j, "target")),
                               expr_from_json(field(j, "a")),
                               expr_from_json(field(j, "b")));
      }
    } catch (PreconditionFailed const& e) {
      throw FormatError(e.what());
    }
    throw FormatError("unknown expression tag \"" + tag + "\"");
  }

  json to_json(Identity const& id) {
    return json{{"lhs", to_json(id.lhs())}, {"rhs", to_json(id.rhs())}};
  }

  Identity identity_from_json(json const& j) {
    return Identity(expr_from_json(field(j, "lhs")), expr_from_json(field(j, "rhs")));
  }

  json to_json(WitnessAssignment const& w) {
    return json{{"a", to_json(w.a)}, {"b", to_json(w.b)}};
  }

  WitnessAssignment witness_from_json(json const& j) {
    return {matrix_from_json(field(j, "a")), matrix_from_json(field(j, "b"))};
  }

  json to_json(FactorWitness const& w) {
    json out  = to_json(w.assignment());
    out["word"]   = w.word;
    out["params"] = w.params;
    return out;
  }

  json to_json(Tableau const& t) {
    return json(t.rows());
  }

  json to_json(SamplerConfig const& cfg) {
    json out{{"dim", cfg.dim},
             {"shape", std::string(to_string(cfg.shape))},
             {"entry_min", cfg.entry_min},
             {"entry_max", cfg.entry_max},
             {"neginf_prob", std::to_string(cfg.neginf_prob.num) + "/"
                                 + std::to_string(cfg.neginf_prob.den)},
             {"diagonal_neginf", cfg.allows_diagonal_neginf()},
             {"trials", cfg.trials},
             {"seed", cfg.seed}};
    return out;
  }

  json to_json(PlacticSamplerConfig const& cfg) {
    return json{{"n", cfg.n},
                {"max_word_len", cfg.max_word_len},
                {"trials", cfg.trials},
                {"seed", cfg.seed}};
  }

  json to_json(VerificationReport const& r, bool include_timing) {
    json out{{"identity_digest", r.identity_digest},
             {"target", r.target},
             {"method", r.method == Method::exact ? "exact" : "sampled"},
             {"trials_run", r.trials_run}};
    if (r.sampler) {
      out["config"] = to_json(*r.sampler);
    } else if (r.plactic_sampler) {
      out["config"] = to_json(*r.plactic_sampler);
    }
    if (auto const* ce = std::get_if<MatrixCounterexample>(&r.counterexample)) {
      out["outcome"]        = r.method == Method::exact ? "falsified" : "counterexample";
      out["counterexample"] = json{{"trial", ce->trial},
                                   {"assignment", to_json(ce->assignment)},
                                   {"entry", position(ce->entry.row, ce->entry.col)},
                                   {"lhs", to_json(ce->entry.lhs)},
                                   {"rhs", to_json(ce->entry.rhs)}};
    } else if (auto const* pe = std::get_if<PlacticCounterexample>(&r.counterexample)) {
      out["outcome"]        = "counterexample";
      out["counterexample"] = json{{"trial", pe->trial},
                                   {"x", pe->x},
                                   {"y", pe->y},
                                   {"lhs", to_json(pe->lhs)},
                                   {"rhs", to_json(pe->rhs)}};
    } else {
      out["outcome"] = "no-counterexample";
      out["note"]    = "no counterexample in " + std::to_string(r.trials_run)
                    + " integer-sampled trials; evidence, not proof";
    }
    if (include_timing) {
      out["elapsed_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count();
    }
    return out;
  }

  WitnessAssignment assignment_from_json(json const& j) {
    if (j.contains("counterexample")) {
      return witness_from_json(field(field(j, "counterexample"), "assignment"));
    }
    if (j.contains("outcome")) {
      throw FormatError("report holds no matrix counterexample");
    }
    return witness_from_json(j);
  }

  json to_json(OracleReport const& r) {
    json results = json::array();
    for (auto const& o : r.results) {
      results.push_back(json{{"oracle", o.name}, {"cases", o.cases}, {"status", "pass"}});
    }
    return json{{"seed", r.seed}, {"results", std::move(results)}};
  }

  namespace {
    json repair_to_json(std::optional<PrimeRepair> const& r) {
      if (!r) {
        return nullptr;
      }
      return json{{"form", r->form == PrimeRepair::Form::crossed ? "crossed" : "doubled"},
                  {"spacer", r->spacer}};
    }
  }  // namespace

  json to_json(PrimeSeparation const& p) {
    json levels = json::array();
    for (auto const& level : p.levels) {
      auto sigma = underlying_permutation(level.a_value);
      json cycle = json::array();
      if (sigma) {
        for (auto len : sigma->cycle_type()) {
          cycle.push_back(len);
        }
      }
      levels.push_back(json{{"level", level.m},
                            {"A", to_json(level.a_value)},
                            {"B", to_json(level.b_value)},
                            {"A_cycle_type", std::move(cycle)},
                            {"A_is_p_cycle", level.a_is_full_cycle},
                            {"B_diagonal_distinct", level.b_diagonal_distinct},
                            {"a_appended", level.a_appended},
                            {"repair", repair_to_json(level.repair)}});
    }
    return json{{"p", p.p},
                {"t", p.t},
                {"lhs_length", p.identity.lhs().length().str()},
                {"rhs_length", p.identity.rhs().length().str()},
                {"levels", std::move(levels)}};
  }

  json rho_to_json(TropMatrix const& m, int n) {
    SubsetIndex const index(n);
    json              legend = json::array();
    for (std::size_t i = 0; i < index.size(); ++i) {
      legend.push_back(elements(index[i]));
    }
    json out      = to_json(m);
    out["legend"] = std::move(legend);
    return out;
  }

  json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw FormatError("cannot open " + path);
    }
    try {
      return json::parse(in);
    } catch (json::exception const& e) {
      throw FormatError(path + ": " + e.what());
    }
  }

  void write_json_file(std::string const& path, json const& j) {
    std::ofstream out(path);
    if (!out) {
      throw FormatError("cannot write " + path);
    }
    out << j.dump(2) << '\n';
  }

}  // namespace tropid
