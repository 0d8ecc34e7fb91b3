#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace toricfib::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInternalError = 1,
    kInputError = 2,
    kCounterexample = 3,
};

/// Splits on commas, keeping empty items.
std::vector<std::string> split_commas(const std::string& text);

/// Entry point shared by the executable and the tests. Reports go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace toricfib::cli
