#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plswe::cli {

enum ExitCode : int { kSolved = 0, kUsage = 1, kDecodeFailure = 2 };

/// Runs one command line (without the program name). Output documents go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plswe::cli
