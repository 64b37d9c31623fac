#pragma once

#include <iosfwd>

namespace dsrl {

// Entry point of the `dsrl` command. Module errors are reported on `err` as
// one line, "error: <category>: <message>", with exit status 1; command-line
// mistakes exit with status 2.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace dsrl
