#pragma once

#include <iosfwd>

namespace weylbott {

// Command-line entry point. Returns the process exit status: 0 on success,
// 1 on verification failure, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace weylbott
