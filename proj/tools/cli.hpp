#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pda::cli {

/// Exit codes: 0 success / valid, 1 invalid PDA or refuted claim, 2 usage error.
enum ExitCode : int { kOk = 0, kInvalid = 1, kUsage = 2 };

/// Runs the `pda` command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pda::cli
