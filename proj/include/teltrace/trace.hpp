#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "teltrace/formula.hpp"

namespace teltrace {

// Finite trace: states[i] is a bitmask over the governing alphabet
// (bit j = alphabet.atoms[j]). A trace of length l has l+1 states.
struct Trace {
  std::vector<std::uint64_t> states;

  int length() const { return static_cast<int>(states.size()) - 1; }
  bool operator==(const Trace& o) const { return states == o.states; }
  bool operator<(const Trace& o) const { return states < o.states; }
};

struct HTTrace {
  Trace here;
  Trace there;

  int length() const { return there.length(); }
  bool total() const { return here == there; }
  bool operator==(const HTTrace& o) const { return here == o.here && there == o.there; }
  bool operator<(const HTTrace& o) const {
    if (there != o.there) return there < o.there;
    return here < o.here;
  }
};

inline HTTrace total_trace(Trace t) { return HTTrace{t, t}; }

// here <= there componentwise; both lengths equal.
bool trace_leq(const Trace& a, const Trace& b);

// Checked constructor for HT-traces.
HTTrace make_ht(Trace here, Trace there);

// State-by-state reversal; realizes the trace mapping of the duality lemma.
Trace reverse(const Trace& t);
HTTrace reverse(const HTTrace& m);

// Whole-trace bit packing, bit (i * n_atoms + j) = atom j at state i.
std::uint64_t pack(const Trace& t, int n_atoms);
Trace unpack(std::uint64_t bits, int n_states, int n_atoms);

// Trace file format: one state per line, atoms inside braces, '%' comments.
Trace parse_trace(const FormulaStore& store, const Alphabet& alphabet,
                  std::string_view text);
std::string print_trace(const FormulaStore& store, const Alphabet& alphabet,
                        const Trace& t);
std::string print_state(const FormulaStore& store, const Alphabet& alphabet,
                        std::uint64_t state);

}  // namespace teltrace
