#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asmq {

/// Full command-line entry point (argv without the program name). Returns the
/// process exit code: 0 on success, 1 on any diagnostic.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace asmq
