#include "teltrace/budget.hpp"

#include <cstdlib>
#include <string>

#include "teltrace/errors.hpp"

namespace teltrace {

Budget Budget::from_env() {
  Budget b;
  if (const char* s = std::getenv("TELTRACE_BUDGET_BITS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end && *end == '\0' && v > 0) b.bits = static_cast<int>(v);
  }
  return b;
}

void Budget::require(long long needed, const char* what) const {
  // uint64 state masks leave us 62 usable bits regardless of the setting.
  int ceiling = bits < 62 ? bits : 62;
  if (needed > ceiling) {
    throw BudgetError(std::string(what) + " needs " + std::to_string(needed) +
                      " bits, budget is " + std::to_string(ceiling) +
                      " (set TELTRACE_BUDGET_BITS or --budget to raise)");
  }
}

}  // namespace teltrace
