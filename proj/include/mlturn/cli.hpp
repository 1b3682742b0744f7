// Command-line front end: extract | respond | equalize | verify | plot.
#pragma once

#include <iosfwd>

namespace mlturn {

/// Runs the CLI. Returns 0 on success, 1 on input/validation errors,
/// 2 on verification failure. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace mlturn
