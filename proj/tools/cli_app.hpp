#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nilflow::cli {

/// Parsed command line. Exactly one input source (catalog name, algebra file,
/// or gram file) per invocation; `catalog` with no name lists the entries.
struct CommandConfig {
  std::string subcommand;  // validate|info|soliton|flow|projective|equilibria|invariants|catalog

  std::string catalog_name;
  std::string algebra_path;
  std::string metric_path;
  std::string gram_path;

  double t_end = 1.0;
  double rtol = 1e-9;
  double atol = 1e-12;
  double tol = 1e-9;
  int samples = 100;
  int max_m = 20;
  std::vector<double> s0;

  std::string out_path;
  std::string metric_out_path;
  std::string format = "csv";  // csv|json (trajectory-emitting commands)

  int sweep = 0;
  unsigned long long seed = 0;
};

/// Executes the command. Returns the process exit status:
/// 0 success, 1 validation failure, 2 usage/input error.
int run(const CommandConfig& cfg);

}  // namespace nilflow::cli
