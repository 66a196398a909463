#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conlat::cli {

/// Stable exit-code contract of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kVerdictFalse = 1,
  kInputError = 2,
  kUsageError = 3,
  kVerifyFailed = 4,
};

/// Runs one command. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conlat::cli
