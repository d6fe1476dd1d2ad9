#pragma once

// JSON forms of the library's values.
//
//   matrix:   {"dim": n, "entries": [[e, ...], ...]}, row-major; each e an
//             integer or "-inf" (integers beyond 64 bits as decimal strings).
//   expr:     {"t":"let","v":"a"} | {"t":"word","v":"abba"}
//             | {"t":"cat","items":[...]} | {"t":"pow","base":...,"exp":"62"}
//             | {"t":"sub","target":...,"a":...,"b":...}
//   identity: {"lhs": expr, "rhs": expr}
//   witness:  {"a": matrix, "b": matrix}
//
// Reports and diagnostics use 1-based matrix positions.

#include <string>

#include <nlohmann/json.hpp>

#include "tropid/constructors.hpp"
#include "tropid/plactic.hpp"
#include "tropid/tropical.hpp"
#include "tropid/verifier.hpp"
#include "tropid/word.hpp"

namespace tropid {

  using json = nlohmann::json;

  json      to_json(TropValue const& x);
  TropValue trop_value_from_json(json const& j);

  json       to_json(TropMatrix const& m);
  TropMatrix matrix_from_json(json const& j);

  json     to_json(WordExpr const& e);
  WordExpr expr_from_json(json const& j);

  json     to_json(Identity const& id);
  Identity identity_from_json(json const& j);

  json              to_json(WitnessAssignment const& w);
  WitnessAssignment witness_from_json(json const& j);

  json to_json(FactorWitness const& w);
  json to_json(Tableau const& t);
  json to_json(SamplerConfig const& cfg);
  json to_json(PlacticSamplerConfig const& cfg);

  // Timing is omitted unless requested so that reports are reproducible.
  json to_json(VerificationReport const& r, bool include_timing = false);

  // The assignment stored in a report's counterexample, or a bare witness.
  WitnessAssignment assignment_from_json(json const& j);

  json to_json(OracleReport const& r);
  json to_json(PrimeSeparation const& p);

  // The representation matrix with a legend mapping positions to subsets.
  json rho_to_json(TropMatrix const& m, int n);

  json read_json_file(std::string const& path);
  void write_json_file(std::string const& path, json const& j);

}  // namespace tropid
