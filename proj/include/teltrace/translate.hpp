#pragma once

#include "teltrace/budget.hpp"
#include "teltrace/program.hpp"
#include "teltrace/solve.hpp"
#include "teltrace/trace.hpp"

namespace teltrace {

struct StampedLit {
  GAtom atom;
  bool neg = false;
};

// a at k -> a_k; previous-literals land on k-1. Shifted literals at k = 0
// are rejected (InputError).
StampedLit tau_literal(int k, const TemporalLiteral& l);

// Instantiation of the rule's literals at time point k (identical for all
// three rule kinds; the kinds differ only in which k they receive).
GroundRule tau_rule(LogicProgram& out, int k, const TemporalRule& r);

// The bounded translation: initial rules at 0, dynamic rules at 1..lambda,
// final rules at lambda, over the stamped copies of alphabet + aux.
LogicProgram tau_bounded(const TemporalProgram& p, int lambda);

// Point-wise variant: final rules get the extra guard `not __q(k+1)`;
// initial and dynamic rules coincide with the bounded translation.
GroundRule tau_star_rule(FormulaStore& store, LogicProgram& out, int k,
                         const TemporalRule& r);

// The module at time point k: at 0 the instantiated initial + final rules
// with input {q_1} and output A_0; at k>0 the dynamic + final rules plus the
// fact q_k, reading A_{k-1} and writing A_k and q_k. Requires a
// present-centered program.
Module build_module(FormulaStore& store, const TemporalProgram& p, int k);

enum class SolveMode { First, AllAtFirst, Exhaustive };

struct SolveStats {
  int n_atoms = 0;
  int n_rules = 0;
  double ms = 0.0;
};

struct SolveReport {
  int horizon = 0;
  bool sat = false;
  std::vector<std::uint64_t> models;   // masks over program.atoms
  std::vector<Trace> trace_models;     // decoded over the original alphabet
  LogicProgram program;                // the composed ground program
  SolveStats stats;
};

// Grows the module chain horizon by horizon, checking compositionality at
// each join and solving with the q-atom of the next point defaulted false.
// First: stop at the smallest satisfiable horizon (one model); AllAtFirst:
// same but with every model; Exhaustive: report every horizon in range.
std::vector<SolveReport> incremental_solve(FormulaStore& store,
                                           const TemporalProgram& p, int lambda_min,
                                           int lambda_max, SolveMode mode,
                                           Budget budget = Budget::from_env());

// Inverts the stamping bijection over the original alphabet; q-atoms and
// auxiliary atoms are dropped.
Trace decode_model(const LogicProgram& prog, const Alphabet& alphabet,
                   std::uint64_t mask, int lambda);

}  // namespace teltrace
