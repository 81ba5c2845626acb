#include "teltrace/translate.hpp"

#include <algorithm>
#include <chrono>

#include "teltrace/errors.hpp"

namespace teltrace {

namespace {
constexpr const char* kQName = "__q";
}

StampedLit tau_literal(int k, const TemporalLiteral& l) {
  if (l.prev && k < 1)
    throw InputError("shifted literal instantiated at time point 0");
  return StampedLit{GAtom{l.atom, l.prev ? k - 1 : k}, l.neg};
}

GroundRule tau_rule(LogicProgram& out, int k, const TemporalRule& r) {
  GroundRule g;
  for (const TemporalLiteral& l : r.body) {
    StampedLit sl = tau_literal(k, l);
    g.body.push_back(GLit{out.intern(sl.atom), sl.neg});
  }
  for (const TemporalLiteral& l : r.head) {
    StampedLit sl = tau_literal(k, l);
    g.head.push_back(GLit{out.intern(sl.atom), sl.neg});
  }
  return g;
}

LogicProgram tau_bounded(const TemporalProgram& p, int lambda) {
  LogicProgram out;
  for (AtomId a : p.all_atoms())
    for (int i = 0; i <= lambda; ++i) out.intern(GAtom{a, i});
  for (const TemporalRule& r : p.rules)
    if (r.kind == RuleKind::Initial) out.rules.push_back(tau_rule(out, 0, r));
  for (int k = 1; k <= lambda; ++k)
    for (const TemporalRule& r : p.rules)
      if (r.kind == RuleKind::Dynamic) out.rules.push_back(tau_rule(out, k, r));
  for (const TemporalRule& r : p.rules)
    if (r.kind == RuleKind::Final) out.rules.push_back(tau_rule(out, lambda, r));
  return out;
}

GroundRule tau_star_rule(FormulaStore& store, LogicProgram& out, int k,
                         const TemporalRule& r) {
  GroundRule g = tau_rule(out, k, r);
  if (r.kind == RuleKind::Final) {
    AtomId q = store.atom(kQName);
    g.body.push_back(GLit{out.intern(GAtom{q, k + 1}), true});
  }
  return g;
}

Module build_module(FormulaStore& store, const TemporalProgram& p, int k) {
  if (!p.present_centered())
    throw InputError("point-wise translation requires a present-centered program");
  AtomId q = store.atom(kQName);
  LogicProgram prog;
  std::vector<GAtom> inputs, outputs;
  std::vector<AtomId> base = p.all_atoms();
  if (k == 0) {
    for (AtomId a : base) prog.intern(GAtom{a, 0});
    for (const TemporalRule& r : p.rules)
      if (r.kind == RuleKind::Initial) prog.rules.push_back(tau_star_rule(store, prog, 0, r));
    for (const TemporalRule& r : p.rules)
      if (r.kind == RuleKind::Final) prog.rules.push_back(tau_star_rule(store, prog, 0, r));
    inputs.push_back(GAtom{q, 1});
    for (AtomId a : base) outputs.push_back(GAtom{a, 0});
  } else {
    for (AtomId a : base) prog.intern(GAtom{a, k});
    for (const TemporalRule& r : p.rules)
      if (r.kind == RuleKind::Dynamic) prog.rules.push_back(tau_star_rule(store, prog, k, r));
    for (const TemporalRule& r : p.rules)
      if (r.kind == RuleKind::Final) prog.rules.push_back(tau_star_rule(store, prog, k, r));
    prog.rules.push_back(GroundRule{{GLit{prog.intern(GAtom{q, k}), false}}, {}});
    for (AtomId a : base) inputs.push_back(GAtom{a, k - 1});
    inputs.push_back(GAtom{q, k + 1});
    for (AtomId a : base) outputs.push_back(GAtom{a, k});
    outputs.push_back(GAtom{q, k});
  }
  return make_module(std::move(prog), std::move(inputs), std::move(outputs));
}

Trace decode_model(const LogicProgram& prog, const Alphabet& alphabet,
                   std::uint64_t mask, int lambda) {
  Trace t;
  t.states.assign(lambda + 1, 0);
  for (std::size_t i = 0; i < prog.atoms.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    const GAtom& a = prog.atoms[i];
    int bit = alphabet.index_of(a.base);
    if (bit < 0) continue;  // q-family or auxiliary atom
    if (a.stamp >= 0 && a.stamp <= lambda) t.states[a.stamp] |= 1ull << bit;
  }
  return t;
}

std::vector<SolveReport> incremental_solve(FormulaStore& store,
                                           const TemporalProgram& p, int lambda_min,
                                           int lambda_max, SolveMode mode,
                                           Budget budget) {
  if (lambda_min > lambda_max) throw InputError("lambda_min exceeds lambda_max");
  if (!p.present_centered())
    throw InputError("incremental solving requires a present-centered program");
  std::vector<SolveReport> reports;
  Module chain = build_module(store, p, 0);
  for (int k = 0; k <= lambda_max; ++k) {
    if (k > 0) chain = join(store, chain, build_module(store, p, k));
    if (k < lambda_min) continue;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::uint64_t> models = stable_models(chain, budget);
    auto t1 = std::chrono::steady_clock::now();
    SolveReport rep;
    rep.horizon = k;
    rep.sat = !models.empty();
    rep.program = chain.prog;
    rep.stats.n_atoms = static_cast<int>(chain.prog.atoms.size());
    rep.stats.n_rules = static_cast<int>(chain.prog.rules.size());
    rep.stats.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (mode == SolveMode::First && !models.empty()) models.resize(1);
    rep.models = models;
    for (std::uint64_t m : models)
      rep.trace_models.push_back(decode_model(chain.prog, p.alphabet, m, k));
    bool found = rep.sat;
    reports.push_back(std::move(rep));
    if (found && mode != SolveMode::Exhaustive) break;
  }
  return reports;
}

}  // namespace teltrace
