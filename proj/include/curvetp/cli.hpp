#pragma once
// The curvetool command line. Results go to `out` (or --output), diagnostics
// to `err`. Exit codes: 0 success, 1 negative answer, 2 invalid input,
// 3 environment failure.

#include <ostream>

namespace curvetp::cli {

enum Exit { Ok = 0, Negative = 1, InvalidInput = 2, Environment = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace curvetp::cli
