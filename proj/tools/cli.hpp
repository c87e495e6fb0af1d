#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ftl::cli {

enum ExitCode { ok = 0, verification_failed = 1, usage_error = 2, capacity_exceeded = 3 };

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ftl::cli
