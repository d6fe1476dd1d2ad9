#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <tropid/serialization.hpp>

namespace tropid::cli {

  struct CriterionResult {
    int         id;
    std::string tag;
    bool        pass = false;
    json        details;
  };

  // Every separation result, recomputed: sampled satisfaction, exact
  // falsification against the stored witnesses, and the oracle suite.
  std::vector<CriterionResult> reproduce_all(std::uint64_t seed, unsigned threads = 0);

  json to_json(std::vector<CriterionResult> const& results, std::uint64_t seed);

}  // namespace tropid::cli
