#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace corot::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUserError = 1,
  kVerificationFailed = 2,
};

/// Everything a subcommand needs, with degrees at this boundary only.
struct RunConfig {
  std::string command;

  std::string family = "corpse";  // plain, corpse, short-corpse, scrofulous, bb1 (grid also: all)
  std::string sequence_path;      // JSON sequence instead of --family
  double theta_deg = 180.0;
  double phi_deg = 0.0;
  std::vector<int> corpse_indices{1, 1, 0};
  int wn_blocks = 1;
  std::vector<double> placements;  // empty: every block mid-pulse (0.5)
  bool plus_branch = false;

  std::string axis = "f";
  double lo = -1.0;
  double hi = 1.0;
  std::size_t count = 201;

  double f_lo = -1.0;
  double f_hi = 1.0;
  std::size_t f_count = 201;
  double g_lo = -0.99;
  double g_hi = 0.99;
  std::size_t g_count = 201;

  std::vector<double> table_angles_deg{30.0, 45.0, 90.0, 180.0};

  std::size_t oracle_samples = 1000;
  std::uint64_t seed = 20011216;

  std::string output;  // file (or directory for `grid --family all`); empty = stdout
  std::string format = "csv";
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns an ExitCode value.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Environment variable that relocates relative output paths.
inline constexpr const char* kOutputDirEnv = "COROT_OUTPUT_DIR";

}  // namespace corot::cli
