#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace affdyn::cli {

enum ExitCode { kOk = 0, kInputError = 1, kInconclusive = 2, kBudgetExceeded = 3 };

struct AnalysisConfig {
  std::string map;
  int iterates = 8;
  int dmax = 4;
  int trials = 5;
  std::optional<long> prime;
  std::vector<long> prime_candidates{3, 5, 7, 11, 13, 17, 19, 23};
  int precision = 12;
  std::uint64_t seed = 20240601;
  std::string point = "1,1";
  int exact_degree_cap = 32;
  int degree_cap = 20000;
  bool json = false;
};

/// Seed of an independent stream derived from the configuration seed.
std::uint64_t stream_seed(std::uint64_t seed, std::uint32_t stream);

/// Parses argv, runs one command and writes the report to out and
/// diagnostics to err. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace affdyn::cli
