#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gevpb {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "GEVPB_OUT_DIR";

/// Entry point behind the `gevpb` executable. args[0] is the program name.
/// Returns 0 on success, 1 on runtime/estimation failure, 2 on bad usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gevpb
