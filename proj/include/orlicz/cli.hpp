#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace orlicz {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitMalformed = 2, kExitInconclusive = 3 };

struct RunConfig {
  std::string command;           ///< distort | examples | netmeasure | fractal | verify
  std::string config_path;       ///< optional for examples and verify
  std::string out_dir = ".";
  double kappa = 1.0;
  std::optional<double> c_n;     ///< default 6^n
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

/// Runs one subcommand, writes its CSV and JSON files into out_dir and returns an ExitCode.
/// Malformed input is reported on `err` as "file:line:col: message".
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and calls run().
int cli_main(int argc, char** argv);

const std::vector<std::string>& commands();

}  // namespace orlicz
