#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "teltrace/formula.hpp"

namespace teltrace {

// Time-stamped propositional atom a_k.
struct GAtom {
  AtomId base = 0;
  int stamp = 0;

  bool operator==(const GAtom& o) const { return base == o.base && stamp == o.stamp; }
  bool operator<(const GAtom& o) const {
    if (stamp != o.stamp) return stamp < o.stamp;
    return base < o.base;
  }
};

// Renders a_k as "a(k)"; an argument tuple absorbs the stamp as a final
// argument, "p(c)" at 2 becoming "p(c,2)".
std::string render_gatom(const FormulaStore& store, const GAtom& a);

struct GLit {
  int atom = 0;  // index into LogicProgram::atoms
  bool neg = false;
};

// head1 | head2 :- body1, not body2.  Empty head = constraint.
struct GroundRule {
  std::vector<GLit> head;
  std::vector<GLit> body;
};

class LogicProgram {
 public:
  std::vector<GAtom> atoms;
  std::vector<GroundRule> rules;

  int intern(const GAtom& a);
  int find(const GAtom& a) const;  // -1 if absent

 private:
  std::map<std::pair<AtomId, int>, int> index_;
};

// Ground program with declared input and output atoms. Inputs and outputs
// are disjoint, cover every program atom, and heads only touch outputs;
// violations throw InvariantError.
struct Module {
  LogicProgram prog;
  std::vector<GAtom> inputs;   // sorted
  std::vector<GAtom> outputs;  // sorted
};

Module make_module(LogicProgram prog, std::vector<GAtom> inputs,
                   std::vector<GAtom> outputs);

// One rule per line, facts as `a(0).`, constraints as `:- ...`, heads joined
// by ` | `, negation as `not `. The header comment records the alphabet and
// the translation parameters handed in by the caller.
std::string emit_text(const FormulaStore& store, const LogicProgram& p,
                      const std::vector<std::string>& header);

// Sorted, human-readable atom set, e.g. "a(0) b(1)".
std::string render_model(const FormulaStore& store, const LogicProgram& p,
                         std::uint64_t model_mask);

}  // namespace teltrace
