#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tadic/cli/parse.hpp"

namespace tadic {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string poly;
  int n = 0;
  u64 p = 0;
  int a = 1;
  std::vector<int> m_list{1};
  int M = 8;
  int N = 24;
  int deg_s = 4;
  i64 B = -1;  // D * basis degree; -1 picks the smallest certified one
  i64 K = 4;
  int k_lo = 1;
  int k_hi = 1;
  u64 seed = 1;
  int samples = 10;
  bool override_nondegenerate = false;
  std::string what = "trace";
  std::string out;
};

/// Fills `cfg` from command-line arguments (and an optional --config file of
/// key=value lines; flags win). Returns -1 to proceed, else an exit code.
int parse_args(int argc, const char* const* argv, RunConfig& cfg);

/// The JSON report for one command. Library errors propagate.
Json run(const RunConfig& cfg);

/// 0 success, 2 precision underflow, 3 theorem violation, 1 anything else.
int exit_code_for(const std::exception& e);

}  // namespace tadic
