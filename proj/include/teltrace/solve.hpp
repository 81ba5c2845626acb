#pragma once

#include "teltrace/budget.hpp"
#include "teltrace/ground.hpp"

namespace teltrace {

// Stable models of a ground program, as bitmasks over prog.atoms, sorted.
// Defined by single-state equilibrium: X is classical model of every rule
// and no Y strictly below X satisfies the rules at the <Y,X> level; this
// covers disjunctive and negated heads uniformly. Small programs go through
// a parallel scan of all candidates; larger ones through a propagation-based
// backtracking search with a program-reduct minimality check.
std::vector<std::uint64_t> stable_models(const LogicProgram& p,
                                         Budget budget = Budget::from_env());

// Module solving: input atoms default to false.
std::vector<std::uint64_t> stable_models(const Module& m,
                                         Budget budget = Budget::from_env());

// Module solving under a fixed input valuation (atoms of `input_true` are
// treated as facts); used by the module-theorem checks.
std::vector<std::uint64_t> stable_models_with_inputs(const Module& m,
                                                     std::uint64_t input_true,
                                                     Budget budget = Budget::from_env());

namespace ref {
// Serial reference: enumerate every candidate and apply the equilibrium
// definition clause by clause.
std::vector<std::uint64_t> stable_models(const LogicProgram& p,
                                         Budget budget = Budget::from_env());
}  // namespace ref

// Strongly connected components of the positive dependency graph
// (head atom -> positive body atom); returns a component id per atom.
std::vector<int> positive_sccs(const LogicProgram& p);

struct CompositionCheck {
  bool ok = true;
  std::vector<GAtom> offending;  // shared outputs or a shared positive loop
  std::string reason;
};

CompositionCheck compositional(const Module& a, const Module& b);

// (P1 u P2, (I1\O2) u (I2\O1), O1 u O2); throws InputError with the
// diagnostic when the modules are not compositional.
Module join(const FormulaStore& store, const Module& a, const Module& b);

}  // namespace teltrace
