#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chemo {

// Exit code contract shared by every subcommand:
//   0 success, 1 hypothesis/assertion failure, 2 config error,
//   3 runtime solver error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverError = 3;

struct RunOptions {
  std::string config_path;
  std::string output_dir;  // empty: "<config stem>_out" next to the cwd
  long long seed_override = -1;  // applies to random initial data
};

struct CheckOptions {
  std::string config_path;
  std::string hypothesis = "h2";  // "h1" or "h2"
  std::string output_dir;         // optional report copy
};

struct SweepOptions {
  std::string spec_path;
  std::string output_dir;  // overrides the spec's output_dir
  int parallelism = 0;     // 0: use the spec's value
};

struct PullbackOptions {
  std::string config_path;
  std::vector<double> depths;
  std::string output_dir;
};

struct OracleOptions {
  std::string goldens_path;
  bool regenerate = false;
};

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int cmd_pullback(const PullbackOptions& opts, std::ostream& out,
                 std::ostream& err);
int cmd_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace chemo
