#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace folio::cli {

// Exit codes: 0 success, 1 usage, 2 bad input, 3 failed --check/--lint.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace folio::cli
