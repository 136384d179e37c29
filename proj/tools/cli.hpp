#pragma once

#include <string>
#include <vector>

namespace ecofollow::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInput = 2,
  kEmpty = 3,
  kNumeric = 4,
};

int run(int argc, char** argv);
// Convenience for tests: args excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace ecofollow::cli
