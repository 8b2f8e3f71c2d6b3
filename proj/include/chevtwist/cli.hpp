#pragma once

// Command-line front end. Results go to stdout (or --output) as JSON, progress
// and diagnostics to stderr.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "chevtwist/finite_group.hpp"

namespace chevtwist {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitComputation = 2, kExitBudget = 3 };

struct CliConfig {
  std::string field = "Q";
  std::string type = "A";
  int rank = 2;
  std::string automorphism = "id";
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultBudget;
  std::string output;  // empty means stdout

  // Command-specific knobs.
  std::string word;
  std::string instance = "adjoint";  // adjoint | twisted | sl2
  std::string symmetry = "standard";
  std::string field_automorphism;    // twist; empty means the involution of the field
  std::string seeds;
  std::string chi;
  int trials = 20;
  int count = 5;
  int power = 1;
  bool enumerate = false;
};

// Runs one command against a parsed configuration and writes its JSON report.
int run(const std::string& command, const CliConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CHEVTWIST_BUDGET seeds the budget) and dispatches to run().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chevtwist
