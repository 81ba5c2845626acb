#include "teltrace/trace.hpp"

#include <algorithm>
#include <sstream>

#include "teltrace/errors.hpp"

namespace teltrace {

bool trace_leq(const Trace& a, const Trace& b) {
  if (a.states.size() != b.states.size()) return false;
  for (std::size_t i = 0; i < a.states.size(); ++i)
    if (a.states[i] & ~b.states[i]) return false;
  return true;
}

HTTrace make_ht(Trace here, Trace there) {
  if (here.states.size() != there.states.size())
    throw InputError("here/there traces differ in length");
  if (!trace_leq(here, there))
    throw InputError("here-states must be included in there-states");
  return HTTrace{std::move(here), std::move(there)};
}

Trace reverse(const Trace& t) {
  Trace r = t;
  std::reverse(r.states.begin(), r.states.end());
  return r;
}

HTTrace reverse(const HTTrace& m) { return HTTrace{reverse(m.here), reverse(m.there)}; }

std::uint64_t pack(const Trace& t, int n_atoms) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < t.states.size(); ++i)
    bits |= t.states[i] << (i * n_atoms);
  return bits;
}

Trace unpack(std::uint64_t bits, int n_states, int n_atoms) {
  Trace t;
  t.states.resize(n_states);
  std::uint64_t state_mask = n_atoms >= 64 ? ~0ull : ((1ull << n_atoms) - 1);
  for (int i = 0; i < n_states; ++i)
    t.states[i] = (bits >> (i * n_atoms)) & state_mask;
  return t;
}

Trace parse_trace(const FormulaStore& store, const Alphabet& alphabet,
                  std::string_view text) {
  Trace t;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto cut = line.find('%');
    if (cut != std::string::npos) line.resize(cut);
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) continue;
    if (line[i] != '{') throw ParseError("expected '{' starting a state", line_no, int(i) + 1);
    ++i;
    std::uint64_t state = 0;
    for (;;) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) throw ParseError("unterminated state", line_no, int(i) + 1);
      if (line[i] == '}') { ++i; break; }
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
             line[i] != '}')
        ++i;
      std::string name = line.substr(start, i - start);
      if (!store.has_atom(name))
        throw ParseError("atom '" + name + "' not in the alphabet", line_no, int(start) + 1);
      // store.has_atom is const; re-find id via a scan over the alphabet.
      int idx = -1;
      for (std::size_t j = 0; j < alphabet.atoms.size(); ++j)
        if (store.atom_name(alphabet.atoms[j]) == name) { idx = static_cast<int>(j); break; }
      if (idx < 0)
        throw ParseError("atom '" + name + "' not in the alphabet", line_no, int(start) + 1);
      state |= 1ull << idx;
    }
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i != line.size()) throw ParseError("trailing text after state", line_no, int(i) + 1);
    t.states.push_back(state);
  }
  if (t.states.empty()) throw ParseError("trace file has no states", line_no, 1);
  return t;
}

std::string print_state(const FormulaStore& store, const Alphabet& alphabet,
                        std::uint64_t state) {
  std::string out = "{";
  bool first = true;
  for (std::size_t j = 0; j < alphabet.atoms.size(); ++j) {
    if (state >> j & 1) {
      if (!first) out += ' ';
      out += store.atom_name(alphabet.atoms[j]);
      first = false;
    }
  }
  out += '}';
  return out;
}

std::string print_trace(const FormulaStore& store, const Alphabet& alphabet,
                        const Trace& t) {
  std::string out;
  for (std::uint64_t s : t.states) {
    out += print_state(store, alphabet, s);
    out += '\n';
  }
  return out;
}

}  // namespace teltrace
