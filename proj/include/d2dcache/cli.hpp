#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace d2dcache {

// Subcommands: sweep, theory, bounds, simulate, cachedist, verify.
// Returns 0 on success, 1 on configuration or usage errors, 2 on numerical
// failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace d2dcache
