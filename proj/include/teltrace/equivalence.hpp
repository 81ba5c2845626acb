#pragma once

#include <optional>

#include "teltrace/budget.hpp"
#include "teltrace/eval.hpp"

namespace teltrace {

struct EquivWitness {
  HTTrace trace;
  int k = 0;
};

struct EquivResult {
  bool equivalent = true;
  std::optional<EquivWitness> witness;
};

// Bounded check of global equivalence: satisfaction values agree on every
// HT-trace of every length 0..lambda_max over the alphabet, at every time
// point. Returns the first differing trace/time otherwise.
EquivResult equivalent_bounded(const FormulaStore& store, Fid phi, Fid psi,
                               int lambda_max, const Alphabet& alphabet,
                               Budget budget = Budget{16});

// Same but only at time point 0 (agreement on models).
EquivResult initially_equivalent_bounded(const FormulaStore& store, Fid phi, Fid psi,
                                         int lambda_max, const Alphabet& alphabet,
                                         Budget budget = Budget{16});

}  // namespace teltrace
