// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mamimo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every tunable of every command, resolved with precedence
// defaults < config file < command-line flags. Negative sentinels mean
// "per-command default"; resolution makes them concrete before anything runs,
// and the resolved values are echoed verbatim into the run manifest.
struct Options {
  std::string command;
  std::uint64_t seed = 1;
  std::string out;          // output path; empty -> $MAMIMO_OUTDIR/<command>.<ext>
  int threads = 0;          // worker cap; <= 0 picks automatically
  std::int64_t trials = -1;
  std::int64_t cal_trials = 10000;
  int m = 200;
  std::vector<int> m_grid = {2, 4, 8, 16, 32, 64, 100, 200, 400};
  int psk = 4;
  int slots = 4;            // Scheme 1b observation count
  double pfa = 0.01;
  double beta_lu = 1.0;
  double beta_ed = 1.0;
  double p_lu = 1.0;
  double p_ed = -1.0;
  double p_tx = 1.0;
  double n0 = -1.0;
  double rho = 0.0;
  double snr_db = 10.0;
  double snr_min = -10.0;
  double snr_max = 20.0;
  double snr_step = 2.0;
  std::string detector;
  std::string pattern = "default";
  double ramp_start = 1.34217728;
  double ramp_growth = 1.25;
  int ramp_intervals = 10;
  int est_slots = 8;
  double ema_weight = 0.5;
  double step_power = -1.0;
  std::string thresholds_file;
};

struct ParsedArgs {
  Options options;
  bool help_requested = false;
  std::string help_text;
};

// Parses command-line arguments (program name excluded). Loads --config
// first (plain JSON config or a run manifest), then lets explicit flags
// override. Throws UsageError on unknown flags, unknown config keys or
// unparseable values.
ParsedArgs parse_args(const std::vector<std::string>& args);

// Runs the resolved command: writes the CSV (or thresholds JSON) and the run
// manifest. Returns kExitOk; throws on failure.
int execute(const Options& options);

// main() adapter: parse, execute, map errors to exit codes
// (usage/config -> kExitUsage, runtime -> kExitRuntime).
int run_cli(int argc, const char* const* argv);

}  // namespace mamimo
