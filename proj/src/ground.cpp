#include "teltrace/ground.hpp"

#include <algorithm>

#include "teltrace/errors.hpp"

namespace teltrace {

std::string render_gatom(const FormulaStore& store, const GAtom& a) {
  const std::string& name = store.atom_name(a.base);
  if (!name.empty() && name.back() == ')') {
    std::string out = name.substr(0, name.size() - 1);
    out += ',';
    out += std::to_string(a.stamp);
    out += ')';
    return out;
  }
  return name + "(" + std::to_string(a.stamp) + ")";
}

int LogicProgram::intern(const GAtom& a) {
  auto key = std::make_pair(a.base, a.stamp);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(atoms.size());
  atoms.push_back(a);
  index_.emplace(key, id);
  return id;
}

int LogicProgram::find(const GAtom& a) const {
  auto it = index_.find(std::make_pair(a.base, a.stamp));
  return it == index_.end() ? -1 : it->second;
}

Module make_module(LogicProgram prog, std::vector<GAtom> inputs,
                   std::vector<GAtom> outputs) {
  std::sort(inputs.begin(), inputs.end());
  std::sort(outputs.begin(), outputs.end());
  for (const GAtom& a : inputs)
    if (std::binary_search(outputs.begin(), outputs.end(), a))
      throw InvariantError("module input and output sets overlap");
  auto covered = [&](const GAtom& a) {
    return std::binary_search(inputs.begin(), inputs.end(), a) ||
           std::binary_search(outputs.begin(), outputs.end(), a);
  };
  for (const GAtom& a : prog.atoms)
    if (!covered(a)) throw InvariantError("module atom outside input/output cover");
  for (const GroundRule& r : prog.rules)
    for (const GLit& l : r.head)
      if (!std::binary_search(outputs.begin(), outputs.end(), prog.atoms[l.atom]))
        throw InvariantError("module head atom outside the output set");
  return Module{std::move(prog), std::move(inputs), std::move(outputs)};
}

std::string emit_text(const FormulaStore& store, const LogicProgram& p,
                      const std::vector<std::string>& header) {
  std::string out;
  for (const std::string& h : header) {
    out += "% ";
    out += h;
    out += '\n';
  }
  for (const GroundRule& r : p.rules) {
    std::string line;
    for (std::size_t i = 0; i < r.head.size(); ++i) {
      if (i) line += " | ";
      if (r.head[i].neg) line += "not ";
      line += render_gatom(store, p.atoms[r.head[i].atom]);
    }
    if (!r.body.empty() || r.head.empty()) {
      if (!r.head.empty()) line += ' ';
      line += ":-";
      for (std::size_t i = 0; i < r.body.size(); ++i) {
        line += i ? ", " : " ";
        if (r.body[i].neg) line += "not ";
        line += render_gatom(store, p.atoms[r.body[i].atom]);
      }
    }
    line += '.';
    out += line;
    out += '\n';
  }
  return out;
}

std::string render_model(const FormulaStore& store, const LogicProgram& p,
                         std::uint64_t model_mask) {
  std::vector<GAtom> in;
  for (std::size_t i = 0; i < p.atoms.size(); ++i)
    if (model_mask >> i & 1) in.push_back(p.atoms[i]);
  std::sort(in.begin(), in.end(), [&](const GAtom& a, const GAtom& b) {
    if (a.stamp != b.stamp) return a.stamp < b.stamp;
    return store.atom_name(a.base) < store.atom_name(b.base);
  });
  std::string out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (i) out += ' ';
    out += render_gatom(store, in[i]);
  }
  return out;
}

}  // namespace teltrace
