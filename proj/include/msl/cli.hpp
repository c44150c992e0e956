#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msl {

// args excludes the program name. CSV goes to out (or --output), reports and
// diagnostics to err. Returns 0, 1 on validation failure, 2 on numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msl
