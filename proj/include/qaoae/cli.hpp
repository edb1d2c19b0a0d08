#pragma once

namespace qaoae {

// Entry point behind the qaoae binary. Exit codes: 0 success, 1 runtime
// failure, 2 usage error, 3 config validation error.
int run_cli(int argc, const char* const* argv);

}  // namespace qaoae
