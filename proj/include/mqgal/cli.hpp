#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mqgal {

/// Entry point behind the mqgal binary, exposed for in-process testing.
/// args excludes the program name. Returns the exit code: 0 success,
/// 1 domain or computation error, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mqgal
