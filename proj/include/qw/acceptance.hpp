#pragma once

#include <iosfwd>

namespace qw {

// Runs every acceptance criterion, printing one pass/fail line each.
// Returns true iff all criteria pass.
bool run_acceptance(std::ostream& out, int jobs = 1);

}  // namespace qw
