#pragma once

// Command-line front end. Kept as a library so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

#include "tukey/geometry.hpp"
#include "tukey/region.hpp"
#include "tukey/search.hpp"

namespace tukey::cli {

/// Runs one command; returns the process exit code (0 ok, 2 parse/config,
/// 3 degenerate input, 4 numerical failure).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Region file: header lines, sorted halfspace rows, vertex rows and facet
/// row references.
std::string format_region_file(const Dataset& data, const SearchResult& search,
                               const RegionPolytope& region);

/// Env var consulted for the default arithmetic mode.
inline constexpr const char* kArithEnv = "TUKEY_ARITH";

}  // namespace tukey::cli
