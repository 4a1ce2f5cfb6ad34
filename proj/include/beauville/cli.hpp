#pragma once

#include <ostream>

namespace beauville {

/// Exit codes: 0 success, 1 false / not found / nonexistent, 2 usage error,
/// 3 cap exceeded, 4 internal error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace beauville
