#pragma once

// Evidence engine: seeded random satisfaction testing of identities over
// tropical matrix semigroups and the plactic monoid, exact falsification
// against witnesses, and brute-force cross checks between independent
// computations.
//
// Sampling is evidence only. A report without a counterexample says that
// none was found in the trials run; only falsification is conclusive.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tropid/constructors.hpp"
#include "tropid/plactic.hpp"
#include "tropid/tropical.hpp"
#include "tropid/word.hpp"

namespace tropid {

  enum class Shape { full, upper_triangular };

  std::string_view to_string(Shape s) noexcept;
  Shape            parse_shape(std::string_view s);

  // A rational probability num / den.
  struct Probability {
    std::uint64_t num = 1;
    std::uint64_t den = 10;

    friend bool operator==(Probability const&, Probability const&) = default;
  };

  // Accepts "p/q" or a decimal such as "0.1".
  Probability parse_probability(std::string_view s);

  struct SamplerConfig {
    std::size_t   dim       = 2;
    Shape         shape     = Shape::full;
    std::int64_t  entry_min = -8;
    std::int64_t  entry_max = 8;
    Probability   neginf_prob{1, 10};
    // Whether diagonal entries may be -inf; by default allowed for full
    // matrices and not for upper triangular ones.
    std::optional<bool> diagonal_neginf;
    std::uint64_t       trials  = 1000;
    std::uint64_t       seed    = 42;
    // 0 means one per hardware thread. Results do not depend on it.
    unsigned threads = 0;

    bool allows_diagonal_neginf() const noexcept {
      return diagonal_neginf.value_or(shape == Shape::full);
    }
  };

  // The generator for trial `trial` under `seed`.
  std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

  // Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);
  bool         bernoulli(std::mt19937_64& rng, Probability p);

  TropMatrix        sample_matrix(SamplerConfig const& cfg, std::mt19937_64& rng);
  WitnessAssignment sample_assignment(SamplerConfig const& cfg, std::uint64_t trial);

  struct EntryDifference {
    std::size_t row;  // 0-based
    std::size_t col;
    TropValue   lhs;
    TropValue   rhs;
  };

  // First entry in row-major order at which x and y differ.
  std::optional<EntryDifference> first_differing_entry(TropMatrix const& x,
                                                       TropMatrix const& y);

  struct MatrixCounterexample {
    std::uint64_t     trial;
    WitnessAssignment assignment;
    EntryDifference   entry;
  };

  struct PlacticCounterexample {
    std::uint64_t trial;
    Word          x;
    Word          y;
    Tableau       lhs;
    Tableau       rhs;
  };

  struct PlacticSamplerConfig {
    int           n            = 4;
    std::size_t   max_word_len = 6;
    std::uint64_t trials       = 1000;
    std::uint64_t seed         = 42;
    unsigned      threads      = 0;
  };

  enum class Method { sampled, exact };

  struct VerificationReport {
    std::string   identity_digest;
    std::string   target;
    Method        method = Method::sampled;
    std::uint64_t trials_run = 0;
    std::optional<SamplerConfig>        sampler;
    std::optional<PlacticSamplerConfig> plactic_sampler;
    std::variant<std::monostate, MatrixCounterexample, PlacticCounterexample>
                             counterexample;
    std::chrono::nanoseconds elapsed{0};

    bool found_counterexample() const noexcept {
      return !std::holds_alternative<std::monostate>(counterexample);
    }
  };

  // Stable SHA-256 digest of the canonical JSON form of an identity.
  std::string identity_digest(Identity const& id);

  // Evaluates both sides on cfg.trials sampled assignments; stops at the
  // first (lowest-index) trial on which they differ.
  VerificationReport check_satisfaction(Identity const& id, SamplerConfig const& cfg);

  // Exact evaluation of both sides under `witness`. Throws WitnessFailed if
  // the sides agree.
  VerificationReport check_falsification(Identity const&          id,
                                         WitnessAssignment const& witness);

  // Samples words x, y over [n] of length 1..max_word_len, evaluates both
  // sides in the plactic monoid by Schensted insertion and, independently,
  // through rho; throws OracleFailure if the two comparisons disagree.
  VerificationReport check_plactic_satisfaction(Identity const&             id,
                                                PlacticSamplerConfig const& cfg);

  ////////////////////////////////////////////////////////////////////////
  // Brute-force cross checks
  ////////////////////////////////////////////////////////////////////////

  struct OracleOptions {
    std::uint64_t seed = 42;
    // Path DP against matrix products: every word up to path_max_word
    // letters, dims 1..path_max_dim, path_seeds random pairs per dim.
    std::size_t path_seeds    = 100;
    std::size_t path_max_dim  = 5;
    std::size_t path_max_word = 6;
    // Knuth closure against Schensted: every word up to knuth_max_len.
    std::size_t knuth_max_len = 6;
    int         knuth_n       = 4;
    // Factor witness law: every w up to witness_max_len, every t up to
    // witness_max_t letters.
    std::size_t                                    witness_max_len = 5;
    std::size_t                                    witness_max_t   = 8;
    std::function<FactorWitness(std::string_view)> witness_builder = factor_witness;
    // diag(AB) = diag(BA) on upper triangular samples.
    std::size_t diagonal_samples = 10'000;
    std::size_t diagonal_max_dim = 6;
    // Restriction to the nodes of a maximal labelled path.
    std::size_t restriction_samples = 2'000;
  };

  struct OracleResult {
    std::string   name;
    std::uint64_t cases = 0;
  };

  struct OracleReport {
    std::uint64_t             seed = 0;
    std::vector<OracleResult> results;
  };

  // Each check returns the number of cases compared and throws
  // OracleFailure describing the first discrepancy.
  std::uint64_t path_product_oracle(OracleOptions const& opts);
  std::uint64_t knuth_schensted_oracle(OracleOptions const& opts);
  std::uint64_t factor_witness_oracle(OracleOptions const& opts);
  std::uint64_t diagonal_commutation_oracle(OracleOptions const& opts);
  std::uint64_t restriction_oracle(OracleOptions const& opts);

  OracleReport oracle_cross_checks(OracleOptions const& opts = {});

}  // namespace tropid
