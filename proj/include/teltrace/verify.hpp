#pragma once

#include <functional>
#include <string>
#include <vector>

#include "teltrace/equilibrium.hpp"
#include "teltrace/normalform.hpp"
#include "teltrace/translate.hpp"

namespace teltrace {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;  // reproducer on failure, notes otherwise
};

struct VerifyOptions {
  int lambda_max = 3;
  std::uint64_t seed = 1;
  int samples = 200;
  Budget budget = Budget::from_env();
};

// The translation routes under test; swappable so the battery itself can be
// shown to catch a corrupted translation.
struct VerifyRoutes {
  std::function<LogicProgram(const TemporalProgram&, int)> bounded;
  VerifyRoutes();
};

// Cross-validation battery on one instance: the brute-force oracle against
// the bounded and point-wise translations of the normal form at every length
// up to lambda_max, plus randomized persistence / collapse / duality /
// desugaring samples. Every failure carries a minimal reproducer.
std::vector<CheckResult> verify_theory(FormulaStore& store, const Theory& th,
                                       const VerifyOptions& opt,
                                       const VerifyRoutes& routes = VerifyRoutes());

}  // namespace teltrace
