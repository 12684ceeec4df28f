#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcpgen/boltzmann.hpp"
#include "dcpgen/gf_core.hpp"
#include "dcpgen/rng.hpp"

namespace dcpgen::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,        // verify found a disagreement
  kInvalidArgs = 2,    // also used when a precision budget cannot be met
  kTrialCap = 3,
  kInternalError = 4,
};

struct RunConfig {
  std::string command;
  std::optional<double> x;
  std::optional<std::uint64_t> n;
  double eps = 0.1;
  std::uint64_t samples = 1;
  std::uint64_t seed = kDefaultSeed;
  double tail_tol = kDefaultTailTol;
  bool exact = false;
  std::string out;             // empty: standard output
  std::string format = "text"; // text | json (records); csv for tables
  unsigned workers = 1;
  std::uint64_t trial_cap = kDefaultTrialCap;
  // Command specific.
  std::uint64_t count_limit = 0;
  std::vector<std::string> words;
  std::string method = "collapsed";
  std::size_t grid_points = 101;
  double scale = 4.0;
  std::size_t max_length = 14;
};

/// Parses argv (without the program name) and runs the command. Machine
/// output goes to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dcpgen::cli
