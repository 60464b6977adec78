#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cohen::cli {

// Exit codes: 0 success, 1 validation error (single-line diagnostic on err),
// 2 internal assertion failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohen::cli
