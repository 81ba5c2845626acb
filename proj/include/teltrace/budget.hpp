#pragma once

#include <cstdint>

namespace teltrace {

// Enumeration budget, measured in bits: a request that would scan more than
// 2^bits candidates (trace bits or ground atoms) is rejected up front.
struct Budget {
  int bits = 20;

  static Budget from_env();  // honors TELTRACE_BUDGET_BITS

  // Throws BudgetError if `needed` bits exceed the budget or the 62-bit
  // representation ceiling.
  void require(long long needed, const char* what) const;
};

}  // namespace teltrace
