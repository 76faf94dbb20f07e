// accept.hpp
// The acceptance suite: one pass/fail line per criterion, shared by the
// `vpl accept` subcommand and the ctest acceptance binary.

#pragma once

#include <cstdint>
#include <ostream>

namespace vpl {

struct AcceptanceOptions {
    bool quick = false;  // desk-scale subset with reduced corpus sizes
    bool record = false; // print measured constants instead of asserting them
};

// Runs every criterion, printing one line each; returns the number of
// failures (0 means the suite passed).
int run_acceptance(const AcceptanceOptions& opts, std::ostream& out);

} // namespace vpl
