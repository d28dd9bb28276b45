#pragma once

// Command dispatch for the batch tool, independent of argument parsing.

#include <iosfwd>
#include <string>
#include <vector>

#include "qclab/config.hpp"

namespace qclab {

/// "qclab <version>"
std::string version_string();

struct CommandOptions {
  std::string out_path;  ///< overrides the config `output` key
  bool exact = false;    ///< ORed with the config `exact` key
  bool report = false;
};

/// Runs one command. CSV goes to the output path when one is set (with a
/// gnuplot .dat file next to it) and to `out` otherwise; the --report summary
/// always goes to `out`. Returns the process exit code: 0 success, 1 failed
/// self test, 2 configuration or argument error, 3 numerical failure.
/// Error messages go to `err`.
int run_command(const std::string& command, const RunConfig& config, const CommandOptions& options, std::ostream& out,
                std::ostream& err);

/// Shortest round-trip decimal form, used for every number written to CSV.
std::string format_number(double value);

}  // namespace qclab
