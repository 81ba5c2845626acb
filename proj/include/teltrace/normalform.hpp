#pragma once

#include <optional>
#include <string>
#include <vector>

#include "teltrace/program.hpp"

namespace teltrace {

// Recognizes statements that already are temporal rules (modulo the
// initial/dynamic split of always-scoped rules and constant folding) and
// returns them without introducing any auxiliary atom. nullopt when the
// statement needs the full translation.
std::optional<std::vector<TemporalRule>> classify_statement(const FormulaStore& store,
                                                            Fid f);

// Compiles an arbitrary theory into a temporal logic program over
// alphabet + fresh atoms whose stable models project onto the stable models
// of the theory. Output rules may place shifted literals in dynamic heads,
// so the result is not necessarily present-centered.
TemporalProgram to_normal_form(FormulaStore& store, const Theory& th);

// A rule whose body looks only to the past and whose head only to the
// future, with no implications beyond negation on either side. The "always"
// scope abbreviates the initial + dynamic pair.
enum class PfScope { InitialRule, DynamicRule, FinalRule, AlwaysRule };

struct PastFutureRule {
  PfScope scope = PfScope::InitialRule;
  Fid body;  // conjunction, possibly top
  Fid head;  // disjunction, possibly bot
};

// Matches f against the past-future shape; on failure *why names the
// offending operator and subformula.
std::optional<PastFutureRule> as_past_future_rule(const FormulaStore& store, Fid f,
                                                  std::string* why = nullptr);

// Converts a past-future rule into a present-centered program with the same
// stable models over the rule's atoms: past subformulas become recursively
// defined history atoms, future head subformulas become obligation atoms
// carried forward and discharged at the last state. Already present-centered
// rules come back unchanged.
TemporalProgram reduce_past_future(FormulaStore& store, const PastFutureRule& r);

// Statement-by-statement driver used by the incremental pipeline: keeps
// present-centered rules, reduces past-future statements, compiles the rest
// and fails with an explanation if the result is still not present-centered.
TemporalProgram reduce_theory(FormulaStore& store, const Theory& th);

// The normalized statement listing used by `parse`: classified rules grouped
// under #program directives, unclassifiable statements echoed as formulas.
std::string normalized_listing(FormulaStore& store, const Theory& th, bool core);

}  // namespace teltrace
