#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gj::cli {

// args excludes the program name.  Returns the process exit code:
// 0 success, 1 usage or domain error, 2 I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gj::cli
