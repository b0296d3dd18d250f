#pragma once

#include <iosfwd>

namespace suppvar {

inline constexpr const char* kVersion = "0.1.0";

/// Entry point of the `suppvar` executable. Returns the process exit status:
/// 0 success, 2 parse or precondition error, 3 budget exceeded, 4 internal consistency failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace suppvar
