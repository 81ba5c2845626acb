#include "teltrace/formula.hpp"

#include <algorithm>

#include "teltrace/errors.hpp"

namespace teltrace {

AtomId FormulaStore::atom(std::string_view name) {
  auto it = atom_ids_.find(std::string(name));
  if (it != atom_ids_.end()) return it->second;
  AtomId id = static_cast<AtomId>(atom_names_.size());
  atom_names_.emplace_back(name);
  atom_ids_.emplace(atom_names_.back(), id);
  return id;
}

bool FormulaStore::has_atom(std::string_view name) const {
  return atom_ids_.count(std::string(name)) != 0;
}

Fid FormulaStore::make(Op op, Fid lhs, Fid rhs) {
  int n = arity(op);
  if (op == Op::Atom)
    throw InvariantError("use make_atom for atom nodes");
  if ((n >= 1) != (lhs != kNoF) || (n >= 2) != (rhs != kNoF))
    throw InvariantError("formula arity mismatch");
  std::uint64_t key = (std::uint64_t(op) << 56) ^ (std::uint64_t(lhs) * 0x9e3779b97f4a7c15ull) ^
                      (std::uint64_t(rhs) + 0x7f4a7c15u);
  for (Fid f : by_hash_[key]) {
    const FNode& nd = nodes_[f];
    if (nd.op == op && nd.lhs == lhs && nd.rhs == rhs) return f;
  }
  Fid f = static_cast<Fid>(nodes_.size());
  nodes_.push_back(FNode{op, 0, lhs, rhs});
  by_hash_[key].push_back(f);
  return f;
}

Fid FormulaStore::make_atom(AtomId a) {
  std::uint64_t key = 0xa70a70a7ull ^ (std::uint64_t(a) * 0x2545f4914f6cdd1dull);
  for (Fid f : by_hash_[key]) {
    const FNode& nd = nodes_[f];
    if (nd.op == Op::Atom && nd.atom == a) return f;
  }
  Fid f = static_cast<Fid>(nodes_.size());
  nodes_.push_back(FNode{Op::Atom, a, kNoF, kNoF});
  by_hash_[key].push_back(f);
  return f;
}

Fid FormulaStore::conj_all(const std::vector<Fid>& fs) {
  if (fs.empty()) return top();
  Fid acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = conj(fs[i], acc);
  return acc;
}

Fid FormulaStore::disj_all(const std::vector<Fid>& fs) {
  if (fs.empty()) return bot();
  Fid acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = disj(fs[i], acc);
  return acc;
}

void FormulaStore::collect_atoms(Fid f, std::vector<AtomId>& out) const {
  const FNode& nd = nodes_[f];
  if (nd.op == Op::Atom) {
    if (std::find(out.begin(), out.end(), nd.atom) == out.end()) out.push_back(nd.atom);
    return;
  }
  if (nd.lhs != kNoF) collect_atoms(nd.lhs, out);
  if (nd.rhs != kNoF) collect_atoms(nd.rhs, out);
}

AtomId FormulaStore::fresh_atom(const std::string& prefix) {
  for (;;) {
    std::string name = prefix + std::to_string(++fresh_counter_);
    if (!has_atom(name)) return atom(name);
  }
}

Alphabet Alphabet::sorted(const FormulaStore& store, std::vector<AtomId> ids) {
  std::sort(ids.begin(), ids.end(), [&](AtomId a, AtomId b) {
    return store.atom_name(a) < store.atom_name(b);
  });
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return Alphabet{std::move(ids)};
}

int Alphabet::index_of(AtomId a) const {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] == a) return static_cast<int>(i);
  return -1;
}

Alphabet mentioned_alphabet(const FormulaStore& store, const std::vector<Fid>& formulas) {
  std::vector<AtomId> ids;
  for (Fid f : formulas) store.collect_atoms(f, ids);
  return Alphabet::sorted(store, std::move(ids));
}

}  // namespace teltrace
