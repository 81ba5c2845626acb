#include "teltrace/solve.hpp"

#include <algorithm>

#include "teltrace/errors.hpp"

namespace teltrace {
namespace {

struct RuleMasks {
  std::uint64_t posb = 0, negb = 0, posh = 0, negh = 0;
};

std::vector<RuleMasks> rule_masks(const LogicProgram& p) {
  std::vector<RuleMasks> out;
  out.reserve(p.rules.size());
  for (const GroundRule& r : p.rules) {
    RuleMasks m;
    for (const GLit& l : r.body) (l.neg ? m.negb : m.posb) |= 1ull << l.atom;
    for (const GLit& l : r.head) (l.neg ? m.negh : m.posh) |= 1ull << l.atom;
    out.push_back(m);
  }
  return out;
}

bool classical_model(const std::vector<RuleMasks>& rm, std::uint64_t x) {
  for (const RuleMasks& m : rm) {
    bool fires = (m.posb & ~x) == 0 && (m.negb & x) == 0;
    if (!fires) continue;
    if ((m.posh & x) == 0 && (m.negh & ~x) == 0) return false;
  }
  return true;
}

// <Y,X> satisfaction of all rules; negation is valued on X.
bool ht_model(const std::vector<RuleMasks>& rm, std::uint64_t y, std::uint64_t x) {
  for (const RuleMasks& m : rm) {
    bool body = (m.posb & ~y) == 0 && (m.negb & x) == 0;
    if (!body) continue;
    bool head = (m.posh & y) != 0 || (m.negh & ~x) != 0;
    if (!head) return false;
  }
  return true;
}

bool minimal_model(const std::vector<RuleMasks>& rm, std::uint64_t x) {
  if (x == 0) return true;
  std::uint64_t y = (x - 1) & x;
  for (;;) {
    if (ht_model(rm, y, x)) return false;
    if (y == 0) break;
    y = (y - 1) & x;
  }
  return true;
}

// Exhaustive scan over candidate interpretations; fine up to ~20 atoms.
std::vector<std::uint64_t> blind_scan(const std::vector<RuleMasks>& rm, int n,
                                      std::uint64_t forced_false, bool parallel) {
  std::uint64_t limit = 1ull << n;
  const std::uint64_t block = 1ull << 12;
  std::uint64_t nblocks = (limit + block - 1) / block;
  std::vector<std::vector<std::uint64_t>> found(nblocks);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(nblocks); ++bi) {
      std::uint64_t end = std::min(limit, (bi + 1) * block);
      for (std::uint64_t x = bi * block; x < end; ++x) {
        if (x & forced_false) continue;
        if (classical_model(rm, x) && minimal_model(rm, x)) found[bi].push_back(x);
      }
    }
  } else {
    for (std::uint64_t bi = 0; bi < nblocks; ++bi) {
      std::uint64_t end = std::min(limit, (bi + 1) * block);
      for (std::uint64_t x = bi * block; x < end; ++x) {
        if (x & forced_false) continue;
        if (classical_model(rm, x) && minimal_model(rm, x)) found[bi].push_back(x);
      }
    }
  }
  std::vector<std::uint64_t> out;
  for (auto& v : found) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Is there a model of the reduct of the program w.r.t. x strictly below x?
// The reduct is a positive program over the atoms of x; solved by a small
// clause search with unit propagation.
struct ReductSat {
  std::vector<int> vars;               // atom indices in x
  std::vector<int> var_of;             // atom index -> local var (-1)
  std::vector<std::vector<int>> cls;   // literals: +v+1 true, -(v+1) false

  bool solve() {
    std::vector<int8_t> val(vars.size(), -1);
    // blocking clause: at least one variable false
    std::vector<int> blocking;
    for (std::size_t v = 0; v < vars.size(); ++v) blocking.push_back(-(int(v) + 1));
    cls.push_back(blocking);
    return sat(val);
  }

 private:
  bool sat(std::vector<int8_t>& val) {
    // unit propagation
    std::vector<std::pair<int, int8_t>> trail;
    for (;;) {
      bool changed = false;
      for (const auto& c : cls) {
        int unassigned = -1;
        bool satd = false;
        int nfree = 0;
        for (int lit : c) {
          int v = std::abs(lit) - 1;
          bool want = lit > 0;
          if (val[v] < 0) {
            ++nfree;
            unassigned = lit;
          } else if ((val[v] == 1) == want) {
            satd = true;
            break;
          }
        }
        if (satd) continue;
        if (nfree == 0) {
          for (auto& tv : trail) val[tv.first] = -1;
          return false;
        }
        if (nfree == 1) {
          int v = std::abs(unassigned) - 1;
          val[v] = unassigned > 0 ? 1 : 0;
          trail.push_back({v, val[v]});
          changed = true;
        }
      }
      if (!changed) break;
    }
    int pick = -1;
    for (std::size_t v = 0; v < val.size(); ++v)
      if (val[v] < 0) { pick = static_cast<int>(v); break; }
    if (pick < 0) return true;  // all clauses satisfied
    for (int8_t b : {int8_t(0), int8_t(1)}) {
      val[pick] = b;
      if (sat(val)) return true;
    }
    val[pick] = -1;
    for (auto& tv : trail) val[tv.first] = -1;
    return false;
  }
};

bool minimal_by_reduct(const std::vector<RuleMasks>& rm, int n, std::uint64_t x) {
  if (x == 0) return true;
  ReductSat rs;
  rs.var_of.assign(n, -1);
  for (int a = 0; a < n; ++a)
    if (x >> a & 1) {
      rs.var_of[a] = static_cast<int>(rs.vars.size());
      rs.vars.push_back(a);
    }
  for (const RuleMasks& m : rm) {
    if (m.negb & x) continue;           // body false on the there-level
    if (m.posb & ~x) continue;          // body can never hold below x
    if ((m.negh & ~x) != 0) continue;   // head satisfied regardless
    std::vector<int> clause;
    for (int a = 0; a < n; ++a) {
      if (m.posb >> a & 1) clause.push_back(-(rs.var_of[a] + 1));
      if ((m.posh >> a & 1) && (x >> a & 1)) clause.push_back(rs.var_of[a] + 1);
    }
    rs.cls.push_back(std::move(clause));
  }
  // a model of all reduct clauses strictly below x disproves minimality
  return !rs.solve();
}

// Backtracking enumeration with clause and support propagation; scales past
// the blind limit. Values: -1 unknown, 0 false, 1 true.
struct Search {
  const std::vector<RuleMasks>& rm;
  int n;
  std::uint64_t all_mask;
  std::vector<std::vector<int>> supports;  // atom -> rules with it in pos head
  std::vector<int8_t> val;
  std::vector<std::uint64_t> out;

  Search(const std::vector<RuleMasks>& rm_, int n_) : rm(rm_), n(n_) {
    all_mask = n >= 64 ? ~0ull : (1ull << n) - 1;
    supports.resize(n);
    for (std::size_t ri = 0; ri < rm.size(); ++ri)
      for (int a = 0; a < n; ++a)
        if (rm[ri].posh >> a & 1) supports[a].push_back(static_cast<int>(ri));
    val.assign(n, -1);
  }

  std::uint64_t mask_of(int8_t want) const {
    std::uint64_t m = 0;
    for (int a = 0; a < n; ++a)
      if (val[a] == want) m |= 1ull << a;
    return m;
  }

  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::uint64_t t = mask_of(1), f = mask_of(0);
      std::uint64_t u = all_mask & ~t & ~f;
      for (const RuleMasks& m : rm) {
        bool body_false = (m.posb & f) != 0 || (m.negb & t) != 0;
        if (body_false) continue;
        bool head_sat = (m.posh & t) != 0 || (m.negh & f) != 0;
        if (head_sat) continue;
        bool body_true = (m.posb & ~t) == 0 && (m.negb & ~f) == 0;
        std::uint64_t pos_open = m.posh & u, neg_open = m.negh & u;
        // an undecided atom on both sides of the head satisfies it either way
        std::uint64_t taut = pos_open & neg_open;
        std::uint64_t head_open = pos_open | neg_open;
        std::uint64_t body_open = (m.posb & u) | (m.negb & u);
        if (body_true) {
          if (taut) continue;
          if (head_open == 0) return false;
          if ((head_open & (head_open - 1)) == 0) {
            int a = 0;
            while (!(head_open >> a & 1)) ++a;
            bool v = (m.posh >> a & 1) != 0;
            if (!set(a, v, trail)) return false;
            changed = true;
          }
          continue;
        }
        if (taut) continue;
        if (head_open == 0) {
          // head definitely false: the body must not fire
          if (body_open == 0) return false;
          if ((body_open & (body_open - 1)) == 0) {
            int a = 0;
            while (!(body_open >> a & 1)) ++a;
            bool v = (m.negb >> a & 1) != 0;  // negated body literal: atom true
            if (!set(a, v, trail)) return false;
            changed = true;
          }
        }
      }
      // support: a true atom needs some rule with it in the head whose body
      // can still fire
      std::uint64_t t2 = mask_of(1), f2 = mask_of(0);
      for (int a = 0; a < n; ++a) {
        if (val[a] != 1) continue;
        int live = -1, nlive = 0;
        for (int ri : supports[a]) {
          const RuleMasks& m = rm[ri];
          if ((m.posb & f2) != 0 || (m.negb & t2) != 0) continue;
          ++nlive;
          live = ri;
          if (nlive > 1) break;
        }
        if (nlive == 0) return false;
        if (nlive == 1) {
          const RuleMasks& m = rm[live];
          for (int bq = 0; bq < n; ++bq) {
            if (m.posb >> bq & 1 && val[bq] < 0) {
              if (!set(bq, true, trail)) return false;
              changed = true;
            }
            if (m.negb >> bq & 1 && val[bq] < 0) {
              if (!set(bq, false, trail)) return false;
              changed = true;
            }
          }
        }
      }
    }
    return true;
  }

  bool set(int a, bool v, std::vector<int>& trail) {
    if (val[a] >= 0) return val[a] == (v ? 1 : 0);
    val[a] = v ? 1 : 0;
    trail.push_back(a);
    return true;
  }

  void run_from(std::vector<int>& trail) {
    std::size_t base = trail.size();
    if (!propagate(trail)) {
      while (trail.size() > base) { val[trail.back()] = -1; trail.pop_back(); }
      return;
    }
    int pick = -1;
    for (int a = 0; a < n; ++a)
      if (val[a] < 0) { pick = a; break; }
    if (pick < 0) {
      std::uint64_t x = mask_of(1);
      if (classical_model(rm, x) && minimal_by_reduct(rm, n, x)) out.push_back(x);
    } else {
      for (int8_t b : {int8_t(0), int8_t(1)}) {
        std::vector<int> sub;
        val[pick] = b;
        sub.push_back(pick);
        run_from(sub);
        for (int a : sub) val[a] = -1;
      }
    }
    while (trail.size() > base) { val[trail.back()] = -1; trail.pop_back(); }
  }
};

std::vector<std::uint64_t> stable_search(const LogicProgram& p,
                                         std::uint64_t forced_true,
                                         std::uint64_t forced_false, Budget budget) {
  int n = static_cast<int>(p.atoms.size());
  budget.require(n, "stable-model search");
  LogicProgram work = p;
  for (int a = 0; a < n; ++a)
    if (forced_true >> a & 1) work.rules.push_back(GroundRule{{GLit{a, false}}, {}});
  auto rm = rule_masks(work);
  if (n <= 18) return blind_scan(rm, n, forced_false, true);
  Search s(rm, n);
  std::vector<int> pre;
  for (int a = 0; a < n; ++a)
    if (forced_false >> a & 1)
      if (!s.set(a, false, pre)) return {};
  if (!s.propagate(pre)) return {};
  int pick = -1;
  for (int a = 0; a < n; ++a)
    if (s.val[a] < 0) { pick = a; break; }
  if (pick < 0) {
    std::uint64_t x = s.mask_of(1);
    if (classical_model(rm, x) && minimal_by_reduct(rm, n, x)) s.out.push_back(x);
  } else {
    for (int8_t b : {int8_t(0), int8_t(1)}) {
      std::vector<int> sub;
      s.val[pick] = b;
      sub.push_back(pick);
      s.run_from(sub);
      for (int a : sub) s.val[a] = -1;
    }
  }
  std::sort(s.out.begin(), s.out.end());
  return s.out;
}

std::uint64_t atoms_mask(const LogicProgram& p, const std::vector<GAtom>& set) {
  std::uint64_t m = 0;
  for (const GAtom& a : set) {
    int idx = p.find(a);
    if (idx >= 0) m |= 1ull << idx;
  }
  return m;
}

}  // namespace

std::vector<std::uint64_t> stable_models(const LogicProgram& p, Budget budget) {
  return stable_search(p, 0, 0, budget);
}

std::vector<std::uint64_t> stable_models(const Module& m, Budget budget) {
  return stable_search(m.prog, 0, atoms_mask(m.prog, m.inputs), budget);
}

std::vector<std::uint64_t> stable_models_with_inputs(const Module& m,
                                                     std::uint64_t input_true,
                                                     Budget budget) {
  std::uint64_t inputs = atoms_mask(m.prog, m.inputs);
  return stable_search(m.prog, input_true & inputs, inputs & ~input_true, budget);
}

namespace ref {

std::vector<std::uint64_t> stable_models(const LogicProgram& p, Budget budget) {
  int n = static_cast<int>(p.atoms.size());
  budget.require(n, "stable-model enumeration");
  auto rm = rule_masks(p);
  return blind_scan(rm, n, 0, false);
}

}  // namespace ref

std::vector<int> positive_sccs(const LogicProgram& p) {
  int n = static_cast<int>(p.atoms.size());
  std::vector<std::vector<int>> adj(n);
  for (const GroundRule& r : p.rules)
    for (const GLit& h : r.head) {
      if (h.neg) continue;
      for (const GLit& b : r.body)
        if (!b.neg) adj[h.atom].push_back(b.atom);
    }
  // iterative Tarjan
  std::vector<int> comp(n, -1), low(n, 0), num(n, -1), stk;
  std::vector<bool> on(n, false);
  int counter = 0, ncomp = 0;
  struct Frame { int v; std::size_t ei; };
  for (int s = 0; s < n; ++s) {
    if (num[s] >= 0) continue;
    std::vector<Frame> call{{s, 0}};
    num[s] = low[s] = counter++;
    stk.push_back(s);
    on[s] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.ei < adj[f.v].size()) {
        int w = adj[f.v][f.ei++];
        if (num[w] < 0) {
          num[w] = low[w] = counter++;
          stk.push_back(w);
          on[w] = true;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == num[v]) {
          for (;;) {
            int w = stk.back();
            stk.pop_back();
            on[w] = false;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
      }
    }
  }
  return comp;
}

namespace {

LogicProgram union_program(const Module& a, const Module& b) {
  LogicProgram u;
  auto add = [&](const LogicProgram& p) {
    std::vector<int> remap(p.atoms.size());
    for (std::size_t i = 0; i < p.atoms.size(); ++i)
      remap[i] = u.intern(p.atoms[i]);
    for (const GroundRule& r : p.rules) {
      GroundRule nr;
      for (const GLit& l : r.head) nr.head.push_back(GLit{remap[l.atom], l.neg});
      for (const GLit& l : r.body) nr.body.push_back(GLit{remap[l.atom], l.neg});
      u.rules.push_back(std::move(nr));
    }
  };
  add(a.prog);
  add(b.prog);
  return u;
}

}  // namespace

CompositionCheck compositional(const Module& a, const Module& b) {
  CompositionCheck c;
  std::vector<GAtom> shared;
  std::set_intersection(a.outputs.begin(), a.outputs.end(), b.outputs.begin(),
                        b.outputs.end(), std::back_inserter(shared));
  if (!shared.empty()) {
    c.ok = false;
    c.offending = shared;
    c.reason = "output sets overlap";
    return c;
  }
  LogicProgram u = union_program(a, b);
  std::vector<int> comp = positive_sccs(u);
  int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  for (int ci = 0; ci < ncomp; ++ci) {
    bool in_a = false, in_b = false;
    for (std::size_t i = 0; i < u.atoms.size(); ++i) {
      if (comp[i] != ci) continue;
      if (std::binary_search(a.outputs.begin(), a.outputs.end(), u.atoms[i])) in_a = true;
      if (std::binary_search(b.outputs.begin(), b.outputs.end(), u.atoms[i])) in_b = true;
    }
    if (in_a && in_b) {
      c.ok = false;
      c.reason = "positive recursion crosses the modules";
      for (std::size_t i = 0; i < u.atoms.size(); ++i)
        if (comp[i] == ci) c.offending.push_back(u.atoms[i]);
      std::sort(c.offending.begin(), c.offending.end());
      return c;
    }
  }
  return c;
}

Module join(const FormulaStore& store, const Module& a, const Module& b) {
  CompositionCheck c = compositional(a, b);
  if (!c.ok) {
    std::string atoms;
    for (const GAtom& g : c.offending) {
      if (!atoms.empty()) atoms += ", ";
      atoms += render_gatom(store, g);
    }
    throw InputError("modules are not compositional (" + c.reason + ": " + atoms + ")");
  }
  LogicProgram u = union_program(a, b);
  std::vector<GAtom> in, out;
  std::set_union(a.outputs.begin(), a.outputs.end(), b.outputs.begin(), b.outputs.end(),
                 std::back_inserter(out));
  std::vector<GAtom> ia, ib;
  std::set_difference(a.inputs.begin(), a.inputs.end(), b.outputs.begin(),
                      b.outputs.end(), std::back_inserter(ia));
  std::set_difference(b.inputs.begin(), b.inputs.end(), a.outputs.begin(),
                      a.outputs.end(), std::back_inserter(ib));
  std::set_union(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(in));
  return make_module(std::move(u), std::move(in), std::move(out));
}

}  // namespace teltrace
