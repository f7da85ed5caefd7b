#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qqinv::cli {

enum ExitStatus : int { kSuccess = 0, kCheckFailed = 1, kInputError = 2 };

/// Runs one command line (without the program name). Exit status: 0 on
/// success, 1 on a failed check or verdict mismatch, 2 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qqinv::cli
