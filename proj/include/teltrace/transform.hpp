#pragma once

#include "teltrace/formula.hpp"

namespace teltrace {

// Rewrites f to the primitive fragment {Atom, Bot, And, Or, Impl, Prev,
// Since, Trigger, Next, Until, Release} using the defining identities of the
// derived operators. Idempotent.
Fid desugar(FormulaStore& store, Fid f);

// Swaps each connective with its Boolean dual (and/or, true/false,
// until/release, next/weak-next, since/trigger, previous/weak-previous and
// the four derived box/diamond operators). Involution. Requires f free of
// implication, negation, equivalence and of the initial/final constants,
// which have no dual; throws InputError otherwise.
Fid dual_boolean(FormulaStore& store, Fid f);

// Swaps each temporal connective with its mirror-image in time
// (until/since, release/trigger, next/previous, the weak and derived forms,
// initial/final). Boolean connectives are untouched. Involution.
Fid swap_time(FormulaStore& store, Fid f);

}  // namespace teltrace
