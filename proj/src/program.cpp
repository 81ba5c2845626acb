#include "teltrace/program.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "teltrace/errors.hpp"

namespace teltrace {

TemporalRule make_rule(RuleKind kind, std::vector<TemporalLiteral> body,
                       std::vector<TemporalLiteral> head) {
  if (kind != RuleKind::Dynamic) {
    for (const auto& l : body)
      if (l.prev) throw InvariantError("shifted literal in a non-dynamic rule body");
    for (const auto& l : head)
      if (l.prev) throw InvariantError("shifted literal in a non-dynamic rule head");
  }
  return TemporalRule{kind, std::move(body), std::move(head)};
}

std::vector<AtomId> TemporalProgram::all_atoms() const {
  std::vector<AtomId> out = alphabet.atoms;
  out.insert(out.end(), aux_alphabet.atoms.begin(), aux_alphabet.atoms.end());
  return out;
}

std::vector<std::string> lint_program(const FormulaStore& store,
                                      const TemporalProgram& p) {
  std::vector<std::string> notes;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    for (const auto& l : p.rules[i].head) {
      if (l.neg)
        notes.push_back("rule " + std::to_string(i + 1) + ": negated head literal '" +
                        (l.prev ? "not '" : "not ") + store.atom_name(l.atom) + "'");
    }
  }
  return notes;
}

namespace {

Fid literal_formula(FormulaStore& s, const TemporalLiteral& l) {
  Fid f = s.make_atom(l.atom);
  if (l.prev) f = s.make(Op::Prev, f);
  if (l.neg) f = s.neg(f);
  return f;
}

}  // namespace

Fid rule_formula(FormulaStore& s, const TemporalRule& r) {
  std::vector<Fid> body, head;
  for (const auto& l : r.body) body.push_back(literal_formula(s, l));
  for (const auto& l : r.head) head.push_back(literal_formula(s, l));
  Fid core;
  if (body.empty())
    core = head.empty() ? s.bot() : s.disj_all(head);
  else
    core = s.impl(s.conj_all(body), s.disj_all(head));
  switch (r.kind) {
    case RuleKind::Initial:
      return core;
    case RuleKind::Dynamic:
      return s.make(Op::WNext, s.make(Op::AlwaysAfter, core));
    case RuleKind::Final:
      return s.make(Op::AlwaysAfter, s.impl(s.make(Op::Final), core));
  }
  return core;
}

Theory program_theory(FormulaStore& s, const TemporalProgram& p) {
  Theory th;
  th.alphabet = Alphabet::sorted(s, p.all_atoms());
  for (const auto& r : p.rules) th.formulas.push_back(rule_formula(s, r));
  return th;
}

namespace {

std::string literal_text(const FormulaStore& s, const TemporalLiteral& l) {
  std::string out;
  if (l.neg) out += "not ";
  if (l.prev) out += '\'';
  out += s.atom_name(l.atom);
  return out;
}

}  // namespace

std::string print_rule(const FormulaStore& s, const TemporalRule& r) {
  std::string out;
  for (std::size_t i = 0; i < r.head.size(); ++i) {
    if (i) out += " ; ";
    out += literal_text(s, r.head[i]);
  }
  if (!r.body.empty() || r.head.empty()) {
    if (!r.head.empty()) out += ' ';
    out += ":-";
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      out += i ? ", " : " ";
      out += literal_text(s, r.body[i]);
    }
  }
  out += '.';
  return out;
}

std::string print_program(const FormulaStore& s, const TemporalProgram& p) {
  std::string out;
  auto group = [&](RuleKind k, const char* header) {
    bool any = false;
    for (const auto& r : p.rules)
      if (r.kind == k) any = true;
    if (!any) return;
    out += header;
    out += '\n';
    for (const auto& r : p.rules)
      if (r.kind == k) {
        out += print_rule(s, r);
        out += '\n';
      }
  };
  group(RuleKind::Initial, "#program initial.");
  group(RuleKind::Dynamic, "#program dynamic.");
  group(RuleKind::Final, "#program final.");
  return out;
}

std::vector<TemporalRule> from_bc_law(const BCLaw& law) {
  std::vector<TemporalLiteral> body, head;
  for (AtomId b : law.conditions)
    body.push_back(TemporalLiteral{b, law.dynamic, false});
  head.push_back(TemporalLiteral{law.head, false, false});
  for (AtomId c : law.consistency)
    head.push_back(TemporalLiteral{c, false, true});
  std::vector<TemporalRule> out;
  out.push_back(make_rule(RuleKind::Dynamic, body, head));
  if (!law.dynamic) {
    // static laws also constrain the initial state
    out.push_back(make_rule(RuleKind::Initial, body, head));
  }
  return out;
}

namespace {

struct BCParser {
  FormulaStore& store;
  std::string line;
  std::size_t pos = 0;
  int line_no;

  void skip_ws() {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= line.size();
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line_no, static_cast<int>(pos) + 1);
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < line.size() &&
           (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_'))
      ++pos;
    if (pos < line.size() && line[pos] == '(') {
      int depth = 1;
      ++pos;
      while (pos < line.size() && depth > 0) {
        if (line[pos] == '(') ++depth;
        if (line[pos] == ')') --depth;
        ++pos;
      }
      if (depth > 0) fail("unterminated argument tuple");
    }
    if (pos == start) fail("expected an atom");
    std::string w = line.substr(start, pos - start);
    if (!std::islower(static_cast<unsigned char>(w[0])))
      fail("atom must start with a lowercase letter");
    return w;
  }
  std::vector<AtomId> atom_list(const char* stop1, const char* stop2) {
    std::vector<AtomId> out;
    for (;;) {
      skip_ws();
      if (at_end()) break;
      std::size_t save = pos;
      std::string w = word();
      if (w == stop1 || (stop2 && w == stop2)) {
        pos = save;
        break;
      }
      out.push_back(store.atom(w));
      skip_ws();
      if (pos < line.size() && line[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    return out;
  }
};

}  // namespace

std::vector<BCLaw> parse_bc_laws(FormulaStore& store, std::string_view text) {
  std::vector<BCLaw> laws;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto cut = raw.find('%');
    if (cut != std::string::npos) raw.resize(cut);
    std::string trimmed = raw;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    std::size_t i = 0;
    while (i < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[i]))) ++i;
    if (i >= trimmed.size()) continue;
    if (trimmed.back() != '.')
      throw ParseError("law must end with '.'", line_no, static_cast<int>(trimmed.size()));
    trimmed.pop_back();
    BCParser p{store, trimmed, i, line_no};
    BCLaw law;
    law.head = store.atom(p.word());
    p.skip_ws();
    if (!p.at_end()) {
      std::string kw = p.word();
      if (kw == "if") law.dynamic = false;
      else if (kw == "after") law.dynamic = true;
      else p.fail("expected 'if' or 'after'");
      law.conditions = p.atom_list("ifcons", nullptr);
      if (!p.at_end()) {
        std::string kw2 = p.word();
        if (kw2 != "ifcons") p.fail("expected 'ifcons'");
        law.consistency = p.atom_list("", nullptr);
      }
    } else {
      p.fail("expected 'if' or 'after'");
    }
    laws.push_back(law);
  }
  return laws;
}

TemporalProgram bc_program(FormulaStore& store, const std::vector<BCLaw>& laws) {
  TemporalProgram p;
  std::vector<AtomId> atoms;
  for (const auto& law : laws) {
    atoms.push_back(law.head);
    atoms.insert(atoms.end(), law.conditions.begin(), law.conditions.end());
    atoms.insert(atoms.end(), law.consistency.begin(), law.consistency.end());
    auto rules = from_bc_law(law);
    p.rules.insert(p.rules.end(), rules.begin(), rules.end());
  }
  p.alphabet = Alphabet::sorted(store, std::move(atoms));
  return p;
}

}  // namespace teltrace
