#pragma once

namespace cournot::cli {

/// Runs the command-line tool. Returns the process exit code; on module
/// errors prints a machine-readable error object to stderr and returns 1.
int run(int argc, const char* const* argv);

}  // namespace cournot::cli
