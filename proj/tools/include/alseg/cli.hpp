#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alseg::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInput = 3,
  kRefused = 4,
  kInvariant = 5,
};

// Runs one `alseg` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace alseg::cli
