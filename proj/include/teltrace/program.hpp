#pragma once

#include <string>
#include <vector>

#include "teltrace/formula.hpp"

namespace teltrace {

// One of a, not a, 'a, not 'a.
struct TemporalLiteral {
  AtomId atom = 0;
  bool prev = false;  // one previous-step applied
  bool neg = false;

  bool operator==(const TemporalLiteral& o) const {
    return atom == o.atom && prev == o.prev && neg == o.neg;
  }
};

enum class RuleKind { Initial, Dynamic, Final };

// body -> head, where head is a disjunction. Initial and final rules carry
// only unshifted literals; checked on construction.
struct TemporalRule {
  RuleKind kind = RuleKind::Initial;
  std::vector<TemporalLiteral> body;
  std::vector<TemporalLiteral> head;

  bool present_centered() const {
    for (const auto& l : head)
      if (l.prev) return false;
    return true;
  }
  bool operator==(const TemporalRule& o) const {
    return kind == o.kind && body == o.body && head == o.head;
  }
};

TemporalRule make_rule(RuleKind kind, std::vector<TemporalLiteral> body,
                       std::vector<TemporalLiteral> head);

struct TemporalProgram {
  Alphabet alphabet;      // user-visible atoms; projections target these
  Alphabet aux_alphabet;  // fresh atoms introduced by transformations
  std::vector<TemporalRule> rules;

  bool present_centered() const {
    for (const auto& r : rules)
      if (!r.present_centered()) return false;
    return true;
  }
  std::vector<AtomId> all_atoms() const;
};

// Rules that would surprise a logic programmer: negated literals in heads.
// Legal per the rule shape, so only reported, never rejected.
std::vector<std::string> lint_program(const FormulaStore& store,
                                      const TemporalProgram& p);

// The rule as a temporal formula, and the program as a theory over
// alphabet + aux (used to run the brute-force oracle on programs).
Fid rule_formula(FormulaStore& store, const TemporalRule& r);
Theory program_theory(FormulaStore& store, const TemporalProgram& p);

// Rule and program rendering in the surface syntax, grouped by kind under
// #program directives.
std::string print_rule(const FormulaStore& store, const TemporalRule& r);
std::string print_program(const FormulaStore& store, const TemporalProgram& p);

// Action-description laws: static ("if") hold at every state, dynamic
// ("after") look one state back; "ifcons" literals are consistency escapes.
struct BCLaw {
  bool dynamic = false;
  AtomId head;
  std::vector<AtomId> conditions;
  std::vector<AtomId> consistency;
};

std::vector<TemporalRule> from_bc_law(const BCLaw& law);

// One law per line: `a if b1,...,bm ifcons c1,...,cn.` or `a after ... .`;
// omitted ifcons means none; '%' comments.
std::vector<BCLaw> parse_bc_laws(FormulaStore& store, std::string_view text);
TemporalProgram bc_program(FormulaStore& store, const std::vector<BCLaw>& laws);

}  // namespace teltrace
