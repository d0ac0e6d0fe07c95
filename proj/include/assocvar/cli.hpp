#pragma once

#include <ostream>

namespace assocvar {

/// Runs the command line; returns the process exit code (0 ok, 1 domain
/// error, 2 usage error).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace assocvar
