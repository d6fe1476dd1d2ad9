#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropid::cli {

  // Exit codes.
  inline constexpr int ok         = 0;
  inline constexpr int unexpected = 1;  // counterexample where none expected, failed witness
  inline constexpr int usage      = 2;

  // args excludes the program name.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace tropid::cli
