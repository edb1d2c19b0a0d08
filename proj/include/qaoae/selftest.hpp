#pragma once

#include <iosfwd>

namespace qaoae {

// Quick oracle-equivalence and invariant battery behind `qaoae selftest`.
// Prints one pass/fail row per check; returns true when all pass.
bool selftest(std::ostream& os);

}  // namespace qaoae
