#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "trilayer/cli/config.hpp"
#include "trilayer/cli/verify.hpp"

namespace trilayer::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitShortfall = 3,
  kExitVerification = 4,
};

struct CommandOptions {
  std::optional<std::string> config_path;
  std::string out_dir = ".";
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
};

/// Output of one command before it is written to disk.
struct Rendered {
  std::string data;  ///< CSV or JSON
  std::string plot;  ///< gnuplot script, empty when not requested
  bool shortfall = false;
  bool failed = false;
};

Rendered render_scan(const RunConfig& cfg);
Rendered render_field(const RunConfig& cfg, unsigned threads);
Rendered render_propagator(const RunConfig& cfg, unsigned threads);
Rendered render_verify(const RunConfig& cfg, const VerifyHooks& hooks = {});

/// Loads the configuration, runs the command, writes <out_dir>/<mode>.csv
/// (verify.json for verify) and the plot script, and returns an ExitCode.
/// mode is one of scan, field, propagator, verify.
int run_command(std::string_view mode, const CommandOptions& options, std::ostream& log,
                const VerifyHooks& hooks = {});

}  // namespace trilayer::cli
