#pragma once

#include <iosfwd>

namespace qmotion::cli {

enum ExitCode : int {
    ok = 0,
    invalid_arguments = 1,
    numerical_failure = 2,
    comparison_failed = 3,
};

/// Entry point of the `qmotion` tool. Output goes to --output when given,
/// otherwise to `out`; diagnostics and usage text go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qmotion::cli
