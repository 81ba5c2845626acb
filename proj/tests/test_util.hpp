#pragma once

#include <random>
#include <vector>

#include "teltrace/formula.hpp"
#include "teltrace/program.hpp"
#include "teltrace/trace.hpp"

namespace teltrace::testutil {

// Random formula over the given atoms; all connectives drawn uniformly
// unless `implication_free` masks out ->, <->, ~ and the two constants that
// have no boolean dual.
inline Fid random_formula(FormulaStore& s, std::mt19937_64& rng,
                          const std::vector<AtomId>& atoms, int depth,
                          bool implication_free = false) {
  static const Op binary[] = {Op::And, Op::Or,      Op::Impl,  Op::Iff,
                              Op::Since, Op::Trigger, Op::Until, Op::Release};
  static const Op unary[] = {Op::Neg,         Op::Prev,     Op::WPrev,
                             Op::AlwaysBefore, Op::EvBefore, Op::Next,
                             Op::WNext,        Op::AlwaysAfter, Op::EvAfter};
  static const Op nullary[] = {Op::Bot, Op::Top, Op::Initial, Op::Final};
  for (;;) {
    int pick = static_cast<int>(rng() % 10);
    if (depth == 0 || pick < 4) {
      if (pick % 3 == 0) {
        Op op = nullary[rng() % 4];
        if (implication_free && (op == Op::Initial || op == Op::Final)) continue;
        return s.make(op);
      }
      return s.make_atom(atoms[rng() % atoms.size()]);
    }
    if (pick < 7) {
      Op op = unary[rng() % 9];
      if (implication_free && op == Op::Neg) continue;
      return s.make(op, random_formula(s, rng, atoms, depth - 1, implication_free));
    }
    Op op = binary[rng() % 8];
    if (implication_free && (op == Op::Impl || op == Op::Iff)) continue;
    return s.make(op, random_formula(s, rng, atoms, depth - 1, implication_free),
                  random_formula(s, rng, atoms, depth - 1, implication_free));
  }
}

inline Trace random_trace(std::mt19937_64& rng, int n_states, int n_atoms) {
  Trace t;
  std::uint64_t mask = (1ull << n_atoms) - 1;
  for (int i = 0; i < n_states; ++i) t.states.push_back(rng() & mask);
  return t;
}

inline HTTrace random_ht(std::mt19937_64& rng, int n_states, int n_atoms) {
  Trace there = random_trace(rng, n_states, n_atoms);
  Trace here = there;
  for (auto& st : here.states) st &= rng();
  return HTTrace{here, there};
}

// Random temporal program: up to max_rules rules over the atoms, shifted
// literals only inside dynamic rules.
inline TemporalProgram random_program(FormulaStore& s, std::mt19937_64& rng,
                                      const std::vector<AtomId>& atoms, int max_rules,
                                      bool present_centered) {
  TemporalProgram p;
  p.alphabet = Alphabet::sorted(s, atoms);
  int n_rules = 1 + static_cast<int>(rng() % max_rules);
  for (int i = 0; i < n_rules; ++i) {
    RuleKind kind = static_cast<RuleKind>(rng() % 3);
    auto lit = [&](bool head) {
      bool shifted = kind == RuleKind::Dynamic && (!head || !present_centered)
                         ? (rng() % 3 == 0)
                         : false;
      return TemporalLiteral{atoms[rng() % atoms.size()], shifted, rng() % 3 == 0};
    };
    std::vector<TemporalLiteral> body, head;
    int nb = static_cast<int>(rng() % 3), nh = static_cast<int>(rng() % 3);
    for (int b = 0; b < nb; ++b) body.push_back(lit(false));
    for (int h = 0; h < nh; ++h) head.push_back(lit(true));
    p.rules.push_back(make_rule(kind, std::move(body), std::move(head)));
  }
  return p;
}

}  // namespace teltrace::testutil
