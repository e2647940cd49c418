#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gysin {

// Exit codes: 0 success, 1 usage or parse error, 2 size cap exceeded,
// 3 self-check failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gysin
