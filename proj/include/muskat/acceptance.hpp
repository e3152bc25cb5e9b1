#pragma once

#include <iosfwd>
#include <string>

namespace muskat {

// Runs the full acceptance suite, one pass/fail row per criterion.
// `only` selects a single criterion id (1-13); 0 runs all.
// Criterion 9 is slow and only runs when include_slow is set (or via only=9).
// Returns 0 iff every executed criterion passes.
int acceptance_suite(std::ostream& out, bool include_slow = false, int only = 0,
                     const std::string& workdir = "out/acceptance");

}  // namespace muskat
