#pragma once

#include <iosfwd>

namespace corrdyn {

/// Entry point of the `corrdyn` command-line tool. JSON reports go to `out`
/// (or --out), errors go to `err` as one JSON line with a `code` field.
/// Exit codes: 0 success, 1 usage/configuration error, 2 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace corrdyn
