#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace teltrace {

// Exit codes: 0 success / model found, 20 exhausted without a model,
// 64 usage, 65 bad input (syntax, non-reducible), 70 internal invariant or
// verification failure, 75 budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace teltrace
