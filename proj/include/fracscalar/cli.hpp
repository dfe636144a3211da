#pragma once

#include <iosfwd>

namespace fracscalar {

/// Entry point of the fracscalar command line (run, sweep, verify-ops, diag).
int run_cli(int argc, char** argv);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fracscalar
