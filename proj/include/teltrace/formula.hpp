#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace teltrace {

using AtomId = std::uint32_t;
using Fid = std::uint32_t;
inline constexpr Fid kNoF = 0xffffffffu;

// Connectives of the temporal language. Past operators mirror future ones;
// the weak variants tolerate the missing neighbor state at the trace edge.
enum class Op : std::uint8_t {
  Atom,
  Bot,
  Top,
  And,
  Or,
  Impl,
  Iff,
  Neg,
  Prev,           // previous
  WPrev,          // weak previous
  Since,
  Trigger,
  AlwaysBefore,   // so far / historically
  EvBefore,       // once in the past
  Initial,        // holds exactly at the first state
  Next,
  WNext,          // weak next
  Until,
  Release,
  AlwaysAfter,    // from now on
  EvAfter,        // eventually
  Final,          // holds exactly at the last state
};

constexpr int arity(Op op) {
  switch (op) {
    case Op::Atom:
    case Op::Bot:
    case Op::Top:
    case Op::Initial:
    case Op::Final:
      return 0;
    case Op::Neg:
    case Op::Prev:
    case Op::WPrev:
    case Op::AlwaysBefore:
    case Op::EvBefore:
    case Op::Next:
    case Op::WNext:
    case Op::AlwaysAfter:
    case Op::EvAfter:
      return 1;
    default:
      return 2;
  }
}

struct FNode {
  Op op;
  AtomId atom;  // valid iff op == Atom
  Fid lhs;
  Fid rhs;
};

// Interns atoms and hash-conses formula nodes, so structural equality is id
// equality and evaluation can memoize per node.
class FormulaStore {
 public:
  AtomId atom(std::string_view name);
  bool has_atom(std::string_view name) const;
  const std::string& atom_name(AtomId id) const { return atom_names_[id]; }
  std::size_t atom_count() const { return atom_names_.size(); }

  Fid make(Op op, Fid lhs = kNoF, Fid rhs = kNoF);
  Fid make_atom(AtomId a);
  Fid make_atom(std::string_view name) { return make_atom(atom(name)); }

  Fid bot() { return make(Op::Bot); }
  Fid top() { return make(Op::Top); }
  Fid neg(Fid f) { return make(Op::Neg, f); }
  Fid conj(Fid a, Fid b) { return make(Op::And, a, b); }
  Fid disj(Fid a, Fid b) { return make(Op::Or, a, b); }
  Fid impl(Fid a, Fid b) { return make(Op::Impl, a, b); }

  // Right-nested chain; empty lists give the neutral element.
  Fid conj_all(const std::vector<Fid>& fs);
  Fid disj_all(const std::vector<Fid>& fs);

  const FNode& node(Fid f) const { return nodes_[f]; }
  Op op(Fid f) const { return nodes_[f].op; }
  std::size_t node_count() const { return nodes_.size(); }

  // Every atom occurring in f, appended to `out` (deduplicated).
  void collect_atoms(Fid f, std::vector<AtomId>& out) const;

  // Fresh auxiliary atom "<prefix><n>" guaranteed not to collide.
  AtomId fresh_atom(const std::string& prefix);

 private:
  struct KeyHash {
    std::size_t operator()(const std::uint64_t& k) const {
      return std::hash<std::uint64_t>()(k);
    }
  };
  std::vector<std::string> atom_names_;
  std::unordered_map<std::string, AtomId> atom_ids_;
  std::vector<FNode> nodes_;
  std::unordered_map<std::uint64_t, std::vector<Fid>> by_hash_;
  int fresh_counter_ = 0;
};

// Alphabet = the atoms a theory ranges over, sorted by name; the sort order
// fixes bit positions in packed traces and every printed listing.
struct Alphabet {
  std::vector<AtomId> atoms;

  static Alphabet sorted(const FormulaStore& store, std::vector<AtomId> ids);
  int index_of(AtomId a) const;  // -1 if absent
  bool contains(AtomId a) const { return index_of(a) >= 0; }
  std::size_t size() const { return atoms.size(); }
};

struct Theory {
  Alphabet alphabet;
  std::vector<Fid> formulas;
};

// Atoms mentioned anywhere in the formulas, as a sorted alphabet.
Alphabet mentioned_alphabet(const FormulaStore& store,
                            const std::vector<Fid>& formulas);

}  // namespace teltrace
