#include "teltrace/normalform.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "teltrace/errors.hpp"
#include "teltrace/printer.hpp"
#include "teltrace/transform.hpp"

namespace teltrace {
namespace {

// ---------------------------------------------------------------- views

// Negation either as the Neg node or as the implication into falsum.
std::optional<Fid> as_neg(const FormulaStore& s, Fid f) {
  const FNode nd = s.node(f);
  if (nd.op == Op::Neg) return nd.lhs;
  if (nd.op == Op::Impl && s.op(nd.rhs) == Op::Bot) return nd.lhs;
  return std::nullopt;
}

void flatten(const FormulaStore& s, Fid f, Op op, std::vector<Fid>& out) {
  const FNode nd = s.node(f);
  if (nd.op == op) {
    flatten(s, nd.lhs, op, out);
    flatten(s, nd.rhs, op, out);
    return;
  }
  out.push_back(f);
}

struct RuleParts {
  bool is_impl;
  Fid body;  // meaningful iff is_impl
  Fid head;  // kNoF encodes falsum
};

RuleParts rule_view(const FormulaStore& s, Fid g) {
  const FNode nd = s.node(g);
  if (nd.op == Op::Impl) return RuleParts{true, nd.lhs, nd.rhs};
  if (nd.op == Op::Neg) return RuleParts{true, nd.lhs, kNoF};
  return RuleParts{false, kNoF, g};
}

struct LitInfo {
  TemporalLiteral lit;
  // true when the literal is false in the time-0 instance of an always rule
  // (an outermost strong previous, or previous over a negation)
  bool strong_prev = false;
};

std::optional<LitInfo> as_literal(const FormulaStore& s, Fid f) {
  const FNode nd = s.node(f);
  if (nd.op == Op::Atom) return LitInfo{{nd.atom, false, false}, false};
  if (nd.op == Op::Prev) {
    const FNode in = s.node(nd.lhs);
    if (in.op == Op::Atom) return LitInfo{{in.atom, true, false}, true};
    if (auto x = as_neg(s, nd.lhs))
      if (s.op(*x) == Op::Atom)
        // previous of a negation equals the negated previous-literal in the
        // dynamic instances, and is false at time 0
        return LitInfo{{s.node(*x).atom, true, true}, true};
    return std::nullopt;
  }
  if (auto x = as_neg(s, f)) {
    const FNode in = s.node(*x);
    if (in.op == Op::Atom) return LitInfo{{in.atom, false, true}, false};
    if (in.op == Op::Prev && s.op(in.lhs) == Op::Atom)
      return LitInfo{{s.node(in.lhs).atom, true, true}, false};
  }
  return std::nullopt;
}

enum class Scope { Init, Dyn, Fin, Alw };

struct Unwrapped {
  Scope scope;
  Fid inner;
};

Unwrapped unwrap(const FormulaStore& s, Fid f) {
  const FNode nd = s.node(f);
  if (nd.op == Op::WNext && s.op(nd.lhs) == Op::AlwaysAfter)
    return {Scope::Dyn, s.node(nd.lhs).lhs};
  if (nd.op == Op::AlwaysAfter) {
    const FNode in = s.node(nd.lhs);
    if (in.op == Op::Impl && s.op(in.lhs) == Op::Final) return {Scope::Fin, in.rhs};
    return {Scope::Alw, nd.lhs};
  }
  return {Scope::Init, f};
}

// ---------------------------------------------------------------- emission

// literal-or-constant with its time-0 polarity for shifted forms
struct L {
  int konst = -1;  // -1 literal, 0 false, 1 true
  TemporalLiteral lit{};
  bool sp = false;  // false at time 0 (strong previous)
  bool is_lit() const { return konst < 0; }
};
L ltrue() { return L{1}; }
L lfalse() { return L{0}; }
L lof(TemporalLiteral l, bool sp = false) { return L{-1, l, sp}; }
L lof(AtomId a) { return L{-1, {a, false, false}, false}; }

L lneg(const L& l) {
  if (!l.is_lit()) return l.konst ? lfalse() : ltrue();
  TemporalLiteral t = l.lit;
  t.neg = !t.neg;
  // a negated previous-literal is true at time 0, and vice versa
  return lof(t, t.prev && !l.sp);
}

// Emits body -> head of the given kind; drops the rule when trivially
// satisfied. Literals must already fit the kind.
void emit_rule(std::vector<TemporalRule>& out, RuleKind kind, const std::vector<L>& body,
               const std::vector<L>& head) {
  std::vector<TemporalLiteral> b, h;
  for (const L& l : body) {
    if (!l.is_lit()) {
      if (l.konst == 0) return;  // false conjunct
      continue;
    }
    if (std::find(b.begin(), b.end(), l.lit) == b.end()) b.push_back(l.lit);
  }
  for (const L& l : head) {
    if (!l.is_lit()) {
      if (l.konst == 1) return;  // true disjunct
      continue;
    }
    if (std::find(h.begin(), h.end(), l.lit) == h.end()) h.push_back(l.lit);
  }
  out.push_back(make_rule(kind, std::move(b), std::move(h)));
}

// Time-0 instance: shifted literals collapse to their initial value.
void emit_initial_rule(std::vector<TemporalRule>& out, const std::vector<L>& body,
                       const std::vector<L>& head) {
  std::vector<L> b, h;
  for (const L& l : body)
    b.push_back(l.is_lit() && l.lit.prev ? (l.sp ? lfalse() : ltrue()) : l);
  for (const L& l : head)
    h.push_back(l.is_lit() && l.lit.prev ? (l.sp ? lfalse() : ltrue()) : l);
  emit_rule(out, RuleKind::Initial, b, h);
}

// ---------------------------------------------------------------- builder

// Shared machinery for the two compilations: the equivalence-forcing
// labeling of arbitrary formulas (normal form), and the one-directional
// history/obligation encoding that keeps programs present-centered
// (past-future reduction).
class Builder {
 public:
  explicit Builder(FormulaStore& s) : s_(s) {}

  FormulaStore& s_;
  std::vector<TemporalRule> rules;
  std::vector<AtomId> aux;

  using Clause = std::vector<L>;

  AtomId fresh() {
    AtomId a = s_.fresh_atom("__nf_");
    aux.push_back(a);
    return a;
  }

  void emit_initial(const std::vector<L>& body, const std::vector<L>& head) {
    emit_initial_rule(rules, body, head);
  }
  void emit_dynamic(const std::vector<L>& body, const std::vector<L>& head) {
    emit_rule(rules, RuleKind::Dynamic, body, head);
  }
  // Final rules carry only unshifted literals; shifted ones are routed
  // through a dynamic carrier atom first.
  void emit_final(const std::vector<L>& body, const std::vector<L>& head) {
    std::vector<L> b, h;
    for (const L& l : body) b.push_back(definal(l));
    for (const L& l : head) h.push_back(definal(l));
    emit_rule(rules, RuleKind::Final, b, h);
  }
  void emit_always(const std::vector<L>& body, const std::vector<L>& head) {
    emit_initial(body, head);
    emit_dynamic(body, head);
  }
  void emit_scoped(Scope sc, const std::vector<L>& body, const std::vector<L>& head) {
    switch (sc) {
      case Scope::Init: emit_initial(body, head); break;
      case Scope::Dyn: emit_dynamic(body, head); break;
      case Scope::Fin: emit_final(body, head); break;
      case Scope::Alw: emit_always(body, head); break;
    }
  }

  L definal(const L& l) {
    if (!l.is_lit() || !l.lit.prev) return l;
    TemporalLiteral pos{l.lit.atom, true, false};
    AtomId& c = prev_carrier_[l.lit.atom];
    if (c == 0) {
      c = fresh();
      emit_dynamic({lof(pos, true)}, {lof(c)});
    }
    L r = lof(c);
    return l.lit.neg ? lneg(r) : r;
  }

  // ---- equivalence-forcing labeling ----

  // Returns a literal whose value equals f at every time point of every
  // HT-trace satisfying the emitted rules.
  L label(Fid f) {
    auto it = cache_.find(f);
    if (it != cache_.end()) return it->second;
    L r = label_uncached(f);
    cache_.emplace(f, r);
    return r;
  }

  // A plain unnegated, unshifted atom equal in value to l.
  L present_alias(const L& l) {
    if (!l.is_lit()) return l;
    if (l.lit.neg) {
      TemporalLiteral pos{l.lit.atom, l.lit.prev, false};
      AtomId y = fresh();
      emit_always({lof(l.lit, l.sp)}, {lof(y)});
      emit_always({lof(y), lof(pos, l.lit.prev)}, {});
      return lof(y);
    }
    if (l.lit.prev) {
      AtomId p = fresh();
      emit_initial({lof(p)}, {});  // no predecessor at time 0
      emit_dynamic({lof(l.lit, true)}, {lof(p)});
      emit_dynamic({lof(p)}, {lof(l.lit, true)});
      return lof(p);
    }
    return l;
  }

  // l with a negative literal replaced by an alias, so that its negation is
  // again a literal.
  L negatable(const L& l) {
    if (l.is_lit() && l.lit.neg) return present_alias(l);
    return l;
  }

 private:
  L label_uncached(Fid f) {
    const FNode nd = s_.node(f);
    switch (nd.op) {
      case Op::Atom: return lof(nd.atom);
      case Op::Bot: return lfalse();
      case Op::Top: return ltrue();
      case Op::Neg: return label_neg(nd.lhs);
      case Op::And: {
        L a = label(nd.lhs), b = label(nd.rhs);
        if (!a.is_lit()) return a.konst ? b : lfalse();
        if (!b.is_lit()) return b.konst ? a : lfalse();
        L x = lof(fresh());
        emit_always({x}, {a});
        emit_always({x}, {b});
        emit_always({a, b}, {x});
        return x;
      }
      case Op::Or: {
        L a = label(nd.lhs), b = label(nd.rhs);
        if (!a.is_lit()) return a.konst ? ltrue() : b;
        if (!b.is_lit()) return b.konst ? ltrue() : a;
        L x = lof(fresh());
        emit_always({a}, {x});
        emit_always({b}, {x});
        emit_always({x}, {a, b});
        return x;
      }
      case Op::Impl: {
        if (s_.op(nd.rhs) == Op::Bot) return label_neg(nd.lhs);
        L a = label(nd.lhs), b = label(nd.rhs);
        if (!a.is_lit()) return a.konst ? b : ltrue();
        if (!b.is_lit()) return b.konst ? ltrue() : label_neg_of(a);
        L x = lof(fresh());
        L an = negatable(a), bn = negatable(b);
        emit_always({lneg(an)}, {x});
        emit_always({b}, {x});
        emit_always({x, a}, {b});
        // disjunctive closure; keeps the label exact when the antecedent
        // holds at the there-world only
        emit_always({}, {x, a, lneg(bn)});
        return x;
      }
      case Op::Iff:
        return label(s_.conj(s_.impl(nd.lhs, nd.rhs), s_.impl(nd.rhs, nd.lhs)));
      case Op::Prev: {
        L a = label(nd.lhs);
        if (!a.is_lit()) {
          if (!a.konst) return lfalse();
          L x = lof(fresh());
          emit_initial({x}, {});
          emit_dynamic({}, {x});
          return x;
        }
        L p = present_alias(a);
        return lof(TemporalLiteral{p.lit.atom, true, false}, true);
      }
      case Op::WPrev: {
        L a = label(nd.lhs);
        if (!a.is_lit()) return a.konst ? ltrue() : label(s_.make(Op::Initial));
        L p = present_alias(a);
        TemporalLiteral prev{p.lit.atom, true, false};
        L x = lof(fresh());
        emit_initial({}, {x});
        emit_dynamic({lof(prev, true)}, {x});
        emit_dynamic({x}, {lof(prev, true)});
        return x;
      }
      case Op::Initial: {
        L x = lof(fresh());
        emit_initial({}, {x});
        emit_dynamic({x}, {});
        return x;
      }
      case Op::Final: {
        L x = lof(fresh());
        emit_final({}, {x});
        emit_dynamic({lof(TemporalLiteral{x.lit.atom, true, false}, true)}, {});
        return x;
      }
      case Op::Next: {
        L a = label(nd.lhs);
        if (!a.is_lit() && !a.konst) return lfalse();
        L x = lof(fresh());
        TemporalLiteral xprev{x.lit.atom, true, false};
        if (!a.is_lit()) {
          emit_dynamic({}, {lof(xprev, true)});
        } else {
          L p = present_alias(a);
          emit_dynamic({lof(xprev, true)}, {p});
          emit_dynamic({p}, {lof(xprev, true)});
        }
        emit_final({x}, {});
        return x;
      }
      case Op::WNext: {
        L a = label(nd.lhs);
        if (!a.is_lit()) return a.konst ? ltrue() : label(s_.make(Op::Final));
        L p = present_alias(a);
        L x = lof(fresh());
        TemporalLiteral xprev{x.lit.atom, true, false};
        emit_dynamic({lof(xprev, true)}, {p});
        emit_dynamic({p}, {lof(xprev, true)});
        emit_final({}, {x});
        return x;
      }
      case Op::Since: {
        L a = label(nd.lhs), b = label(nd.rhs);
        if (!b.is_lit()) return b.konst ? ltrue() : lfalse();
        if (!a.is_lit() && !a.konst) return b;
        L x = lof(fresh());
        L xprev = lof(TemporalLiteral{x.lit.atom, true, false}, true);
        emit_always({b}, {x});
        if (a.is_lit())
          emit_always({a, xprev}, {x});
        else
          emit_always({xprev}, {x});
        if (a.is_lit()) emit_always({x}, {b, a});
        emit_always({x}, {b, xprev});
        return x;
      }
      case Op::EvBefore: {
        L b = label(nd.lhs);
        if (!b.is_lit()) return b;
        L x = lof(fresh());
        L xprev = lof(TemporalLiteral{x.lit.atom, true, false}, true);
        emit_always({b}, {x});
        emit_always({xprev}, {x});
        emit_always({x}, {b, xprev});
        return x;
      }
      case Op::Trigger: {
        L a = label(nd.lhs), b = label(nd.rhs);
        if (!b.is_lit()) return b.konst ? ltrue() : lfalse();
        if (!a.is_lit() && a.konst) return b;
        L x = lof(fresh());
        L xprev = lof(TemporalLiteral{x.lit.atom, true, false}, true);
        emit_initial({b}, {x});
        emit_initial({x}, {b});
        if (a.is_lit()) emit_dynamic({b, a}, {x});
        emit_dynamic({b, xprev}, {x});
        emit_dynamic({x}, {b});
        if (a.is_lit())
          emit_dynamic({x}, {a, xprev});
        else
          emit_dynamic({x}, {xprev});
        return x;
      }
      case Op::AlwaysBefore: {
        L b = label(nd.lhs);
        if (!b.is_lit()) return b;
        L x = lof(fresh());
        L xprev = lof(TemporalLiteral{x.lit.atom, true, false}, true);
        emit_initial({b}, {x});
        emit_initial({x}, {b});
        emit_dynamic({b, xprev}, {x});
        emit_dynamic({x}, {b});
        emit_dynamic({x}, {xprev});
        return x;
      }
      case Op::Until: {
        L a = label(nd.lhs), b = label(nd.rhs);
        if (!b.is_lit()) return b.konst ? ltrue() : lfalse();
        if (!a.is_lit() && !a.konst) return b;
        L x = lof(fresh());
        L y = next_stage(x.lit.atom, false);
        emit_always({b}, {x});
        if (a.is_lit())
          emit_always({a, y}, {x});
        else
          emit_always({y}, {x});
        if (a.is_lit()) emit_always({x}, {b, a});
        emit_always({x}, {b, y});
        return x;
      }
      case Op::EvAfter: {
        L b = label(nd.lhs);
        if (!b.is_lit()) return b;
        L x = lof(fresh());
        L y = next_stage(x.lit.atom, false);
        emit_always({b}, {x});
        emit_always({y}, {x});
        emit_always({x}, {b, y});
        return x;
      }
      case Op::Release: {
        L a = label(nd.lhs), b = label(nd.rhs);
        if (!b.is_lit()) return b.konst ? ltrue() : lfalse();
        if (!a.is_lit() && a.konst) return b;
        L x = lof(fresh());
        L d = next_stage(x.lit.atom, true);
        if (a.is_lit()) emit_always({b, a}, {x});
        emit_always({b, d}, {x});
        emit_always({x}, {b});
        if (a.is_lit())
          emit_always({x}, {a, d});
        else
          emit_always({x}, {d});
        return x;
      }
      case Op::AlwaysAfter: {
        L b = label(nd.lhs);
        if (!b.is_lit()) return b;
        L x = lof(fresh());
        L d = next_stage(x.lit.atom, true);
        emit_always({b, d}, {x});
        emit_always({x}, {b});
        emit_always({x}, {d});
        return x;
      }
    }
    throw InvariantError("unhandled connective in labeling");
  }

  // x equal in value to the negation of l (callers guarantee l can appear
  // under negation; negative literals are aliased first).
  L label_neg_of(L l) {
    if (!l.is_lit()) return l.konst ? lfalse() : ltrue();
    if (l.lit.neg) l = present_alias(l);
    L x = lof(fresh());
    emit_always({lneg(l)}, {x});
    emit_always({x, l}, {});
    return x;
  }

  L label_neg(Fid inner) { return label_neg_of(label(inner)); }

  // Fresh atom valued as `base` one state later: the dynamic pair mirrors
  // the next-step through a previous-step, the boundary rule fixes the last
  // state (strong: false, weak: true).
  L next_stage(AtomId base, bool weak) {
    AtomId y = fresh();
    TemporalLiteral yprev{y, true, false};
    emit_dynamic({lof(yprev, true)}, {lof(base)});
    emit_dynamic({lof(base)}, {lof(yprev, true)});
    if (weak)
      emit_final({}, {lof(y)});
    else
      emit_final({lof(y)}, {});
    return lof(y);
  }

  std::unordered_map<Fid, L> cache_;
  std::unordered_map<AtomId, AtomId> prev_carrier_;

  // ---- one-directional labeling for present-centered reductions ----

 public:
  // Body labeling: a literal with value >= f everywhere and equal to f in
  // every equilibrium model; all derivation rules are present-centered.
  L blab(Fid f) {
    auto it = bcache_.find(f);
    if (it != bcache_.end()) return it->second;
    L r = blab_uncached(f);
    bcache_.emplace(f, r);
    return r;
  }

  // Head labeling. A head formula turns into clauses over unshifted
  // literals plus two kinds of fresh atoms:
  //   - obligation tokens: chosen disjunctively, they carry the derivation
  //     of deferred content forward (carry rules) and are discharged at the
  //     last state;
  //   - value atoms: supported by an excluded-middle choice and therefore
  //     classical, pinned to the temporal value of their subformula by
  //     there-level constraints only; they never derive anything.
  // Wherever a rule may defer (token in a disjunction), a bridge constraint
  // forces the token whenever the deferred value actually holds, so that
  // smaller here-traces can exercise the deferral during the minimality
  // check exactly as in the source logic.
  struct HeadClause {
    Clause lits;
    std::vector<std::pair<L, L>> bridges;  // (next-value atom, token)
  };

  std::vector<HeadClause> htok(Fid f) {
    auto it = hcache_.find(f);
    if (it != hcache_.end()) return it->second;
    std::vector<HeadClause> r = htok_uncached(f);
    hcache_.emplace(f, r);
    return r;
  }

  // Emits body -> clause in the given scope together with the clause's
  // bridge constraints.
  void emit_head_clause(Scope sc, const std::vector<L>& body, const HeadClause& hc) {
    emit_scoped(sc, body, hc.lits);
    for (const auto& [value, token] : hc.bridges) {
      std::vector<L> cb = body;
      cb.push_back(value);
      cb.push_back(lneg(token));
      emit_scoped(sc, cb, {});
    }
  }

 private:
  L blab_uncached(Fid f) {
    if (auto li = as_literal(s_, f)) return lof(li->lit, li->strong_prev);
    const FNode nd = s_.node(f);
    switch (nd.op) {
      case Op::Bot: return lfalse();
      case Op::Top: return ltrue();
      case Op::Neg:
      case Op::Impl: {
        auto negged = as_neg(s_, f);
        if (!negged) throw InputError("implication inside a rule body is not reducible");
        L in = blab(*negged);
        if (!in.is_lit()) return in.konst ? lfalse() : ltrue();
        if (!in.lit.neg) return lneg(in);
        return lneg(derived(*negged, in));
      }
      case Op::And:
      case Op::Or:
        return blab_tree_atom(f);
      case Op::Prev: {
        L in = blab(nd.lhs);
        if (!in.is_lit()) {
          if (!in.konst) return lfalse();
          AtomId z = fresh();
          emit_dynamic({}, {lof(z)});
          return lof(z);
        }
        L base = (in.lit.prev || in.lit.neg) ? derived(nd.lhs, in) : in;
        return lof(TemporalLiteral{base.lit.atom, true, false}, true);
      }
      case Op::WPrev: {
        L in = blab(nd.lhs);
        if (!in.is_lit() && in.konst) return ltrue();
        AtomId z = fresh();
        emit_initial({}, {lof(z)});
        if (in.is_lit()) emit_dynamic({prev_of(in)}, {lof(z)});
        return lof(z);
      }
      case Op::Initial: {
        AtomId z = fresh();
        emit_initial({}, {lof(z)});
        return lof(z);
      }
      case Op::EvBefore: {
        L in = blab(nd.lhs);
        if (!in.is_lit()) return in;
        AtomId h = fresh();
        emit_always({in}, {lof(h)});
        emit_dynamic({lof(TemporalLiteral{h, true, false}, true)}, {lof(h)});
        return lof(h);
      }
      case Op::AlwaysBefore: {
        L in = blab(nd.lhs);
        if (!in.is_lit()) return in.konst ? ltrue() : lfalse();
        AtomId g = fresh();
        emit_initial({in}, {lof(g)});
        emit_dynamic({in, lof(TemporalLiteral{g, true, false}, true)}, {lof(g)});
        return lof(g);
      }
      case Op::Since: {
        L a = blab(nd.lhs), b = blab(nd.rhs);
        if (!b.is_lit()) return b.konst ? ltrue() : lfalse();
        if (!a.is_lit() && !a.konst) return b;
        AtomId z = fresh();
        L zp = lof(TemporalLiteral{z, true, false}, true);
        emit_always({b}, {lof(z)});
        if (a.is_lit())
          emit_dynamic({a, zp}, {lof(z)});
        else
          emit_dynamic({zp}, {lof(z)});
        return lof(z);
      }
      case Op::Trigger: {
        L a = blab(nd.lhs), b = blab(nd.rhs);
        if (!b.is_lit()) return b.konst ? ltrue() : lfalse();
        if (!a.is_lit() && a.konst) return b;
        AtomId z = fresh();
        L zp = lof(TemporalLiteral{z, true, false}, true);
        emit_initial({b}, {lof(z)});
        if (a.is_lit()) emit_dynamic({b, a}, {lof(z)});
        emit_dynamic({b, zp}, {lof(z)});
        return lof(z);
      }
      default:
        throw InputError("future operator in a rule body is not reducible");
    }
  }

  // Materializes a literal into a plain positive atom, one-directionally.
  L derived(Fid f, const L& l) {
    auto it = derived_.find(f);
    if (it != derived_.end()) return lof(it->second);
    AtomId z = fresh();
    emit_always({l}, {lof(z)});
    derived_.emplace(f, z);
    return lof(z);
  }

  L prev_of(const L& l) {
    if (!l.is_lit()) throw InvariantError("prev_of on a constant");
    if (!l.lit.prev) {
      TemporalLiteral t{l.lit.atom, true, l.lit.neg};
      return lof(t, !t.neg);
    }
    AtomId z = fresh();
    emit_dynamic({l}, {lof(z)});
    return lof(TemporalLiteral{z, true, false}, true);
  }

  // Disjunctive normal form over body-labeled leaves.
  std::vector<std::vector<L>> blab_dnf(Fid f) {
    const FNode nd = s_.node(f);
    if (nd.op == Op::And) {
      auto a = blab_dnf(nd.lhs), b = blab_dnf(nd.rhs);
      std::vector<std::vector<L>> out;
      for (const auto& x : a)
        for (const auto& y : b) {
          std::vector<L> m = x;
          m.insert(m.end(), y.begin(), y.end());
          out.push_back(std::move(m));
        }
      if (out.size() > 32) throw InputError("negated body grows too many branches");
      return out;
    }
    if (nd.op == Op::Or) {
      auto a = blab_dnf(nd.lhs), b = blab_dnf(nd.rhs);
      a.insert(a.end(), b.begin(), b.end());
      if (a.size() > 32) throw InputError("negated body grows too many branches");
      return a;
    }
    L l = blab(f);
    if (!l.is_lit())
      return l.konst ? std::vector<std::vector<L>>{{}} : std::vector<std::vector<L>>{};
    return {{l}};
  }

  // A single atom standing for an and/or tree in literal position.
  L blab_tree_atom(Fid f) {
    auto dnf = blab_dnf(f);
    if (dnf.empty()) return lfalse();
    if (dnf.size() == 1 && dnf[0].empty()) return ltrue();
    if (dnf.size() == 1 && dnf[0].size() == 1) return dnf[0][0];
    AtomId z = fresh();
    for (const auto& branch : dnf) emit_always(branch, {lof(z)});
    return lof(z);
  }

  // Negation pushed through a negation-free future formula; sound because
  // negated formulas are valued classically on the there-trace.
  Fid nnf_neg(Fid f) {
    const FNode nd = s_.node(f);
    switch (nd.op) {
      case Op::Atom: return s_.neg(f);
      case Op::Top: return s_.bot();
      case Op::Bot: return s_.top();
      case Op::And: return s_.disj(nnf_neg(nd.lhs), nnf_neg(nd.rhs));
      case Op::Or: return s_.conj(nnf_neg(nd.lhs), nnf_neg(nd.rhs));
      case Op::Next: return s_.make(Op::WNext, nnf_neg(nd.lhs));
      case Op::WNext: return s_.make(Op::Next, nnf_neg(nd.lhs));
      case Op::Until: return s_.make(Op::Release, nnf_neg(nd.lhs), nnf_neg(nd.rhs));
      case Op::Release: return s_.make(Op::Until, nnf_neg(nd.lhs), nnf_neg(nd.rhs));
      case Op::AlwaysAfter: return s_.make(Op::EvAfter, nnf_neg(nd.lhs));
      case Op::EvAfter: return s_.make(Op::AlwaysAfter, nnf_neg(nd.lhs));
      case Op::Final: return s_.make(Op::Next, s_.top());
      default:
        throw InputError("nested negation in a rule head is not reducible");
    }
  }

  std::vector<HeadClause> clause_cross(const std::vector<HeadClause>& a,
                                       const std::vector<HeadClause>& b) {
    std::vector<HeadClause> out;
    for (const auto& x : a)
      for (const auto& y : b) {
        HeadClause m = x;
        m.lits.insert(m.lits.end(), y.lits.begin(), y.lits.end());
        m.bridges.insert(m.bridges.end(), y.bridges.begin(), y.bridges.end());
        out.push_back(std::move(m));
      }
    if (out.size() > 64) throw InputError("rule head grows too many clauses");
    return out;
  }

  // An atom free to be chosen true; the only support of the value atoms.
  L choice_atom() {
    AtomId a = fresh();
    emit_always({}, {lof(a), lneg(lof(a))});
    return lof(a);
  }

  // A classical literal pinned to the value of f at every time point
  // (there-level constraints only; never derives anything).
  L val(Fid f) {
    auto it = vcache_.find(f);
    if (it != vcache_.end()) return it->second;
    L r = val_uncached(f);
    vcache_.emplace(f, r);
    return r;
  }

  // Value of "m one state later": strong -> false at the last state, weak
  // -> true there.
  L val_next(const L& m, bool weak) {
    auto key = std::make_pair(m.lit.atom, weak);
    auto it = vnext_cache_.find(key);
    if (it != vnext_cache_.end()) return it->second;
    L u = choice_atom();
    L uprev = lof(TemporalLiteral{u.lit.atom, true, false}, true);
    emit_dynamic({lneg(uprev), m}, {});
    emit_dynamic({uprev, lneg(m)}, {});
    if (weak)
      emit_final({lneg(u)}, {});
    else
      emit_final({u}, {});
    vnext_cache_.emplace(key, u);
    return u;
  }

  // Pinned value of "the operator holds one state later", built directly so
  // that single-operator heads cost one value atom. f must be EvAfter,
  // AlwaysAfter, Until or Release.
  L op_value_next(Fid f) {
    auto it = opnext_cache_.find(f);
    if (it != opnext_cache_.end()) return it->second;
    const FNode nd = s_.node(f);
    L u = choice_atom();
    L up = lof(TemporalLiteral{u.lit.atom, true, false}, true);
    L nup = lneg(up);
    switch (nd.op) {
      case Op::EvAfter: {
        L w = val(nd.lhs);
        emit_dynamic({nup, w}, {});
        emit_dynamic({nup, u}, {});
        emit_dynamic({up, lneg(w), lneg(u)}, {});
        emit_final({u}, {});
        break;
      }
      case Op::AlwaysAfter: {
        L w = val(nd.lhs);
        emit_dynamic({up, lneg(w)}, {});
        emit_dynamic({up, lneg(u)}, {});
        emit_dynamic({nup, w, u}, {});
        emit_final({lneg(u)}, {});
        break;
      }
      case Op::Until: {
        L wa = val(nd.lhs), wb = val(nd.rhs);
        emit_dynamic({nup, wb}, {});
        emit_dynamic({nup, wa, u}, {});
        emit_dynamic({up, lneg(wb), lneg(wa)}, {});
        emit_dynamic({up, lneg(wb), lneg(u)}, {});
        emit_final({u}, {});
        break;
      }
      case Op::Release: {
        L wa = val(nd.lhs), wb = val(nd.rhs);
        emit_dynamic({nup, wb, wa}, {});
        emit_dynamic({nup, wb, u}, {});
        emit_dynamic({up, lneg(wb)}, {});
        emit_dynamic({up, lneg(wa), lneg(u)}, {});
        emit_final({lneg(u)}, {});
        break;
      }
      default:
        throw InvariantError("op_value_next on a non-deferring operator");
    }
    opnext_cache_.emplace(f, u);
    return u;
  }

  L val_uncached(Fid f) {
    const FNode nd = s_.node(f);
    switch (nd.op) {
      case Op::Top: return ltrue();
      case Op::Bot: return lfalse();
      case Op::Atom: return lof(nd.atom);
      case Op::Neg:
      case Op::Impl: {
        auto in = as_neg(s_, f);
        if (!in) throw InputError("implication inside a rule head is not reducible");
        if (s_.op(*in) == Op::Atom)
          return lof(TemporalLiteral{s_.node(*in).atom, false, true});
        if (past_free(*in) && neg_free(*in)) return val(nnf_neg(*in));
        if (future_free(*in)) {
          L z = blab(*in);
          if (!z.is_lit()) return z.konst ? lfalse() : ltrue();
          if (z.lit.neg || z.lit.prev) z = derived(*in, z);
          return lneg(z);
        }
        throw InputError("nested negation under a negated head is not reducible");
      }
      case Op::And: {
        L a = val(nd.lhs), b = val(nd.rhs);
        if (!a.is_lit()) return a.konst ? b : lfalse();
        if (!b.is_lit()) return b.konst ? a : lfalse();
        L m = choice_atom();
        emit_always({a, b, lneg(m)}, {});
        emit_always({m, lneg(a)}, {});
        emit_always({m, lneg(b)}, {});
        return m;
      }
      case Op::Or: {
        L a = val(nd.lhs), b = val(nd.rhs);
        if (!a.is_lit()) return a.konst ? ltrue() : b;
        if (!b.is_lit()) return b.konst ? ltrue() : a;
        L m = choice_atom();
        emit_always({a, lneg(m)}, {});
        emit_always({b, lneg(m)}, {});
        emit_always({m, lneg(a), lneg(b)}, {});
        return m;
      }
      case Op::Final: return lof(last_marker());
      case Op::Next:
      case Op::WNext: {
        L a = val(nd.lhs);
        if (!a.is_lit()) {
          if ((nd.op == Op::Next) == (a.konst == 1)) {
            // value of "next true" / "weak next false": position-dependent
            L m = choice_atom();
            if (nd.op == Op::Next) {
              emit_dynamic({lneg(lof(TemporalLiteral{m.lit.atom, true, false}, true))}, {});
              emit_final({m}, {});
            } else {
              emit_dynamic({lof(TemporalLiteral{m.lit.atom, true, false}, true)}, {});
              emit_final({lneg(m)}, {});
            }
            return m;
          }
          return a.konst ? ltrue() : lfalse();
        }
        return val_next(a, nd.op == Op::WNext);
      }
      case Op::EvAfter: {
        L a = val(nd.lhs);
        if (!a.is_lit()) return a;
        L m = choice_atom();
        L u = val_next(m, false);
        emit_always({a, lneg(m)}, {});
        emit_always({u, lneg(m)}, {});
        emit_always({m, lneg(a), lneg(u)}, {});
        return m;
      }
      case Op::AlwaysAfter: {
        L a = val(nd.lhs);
        if (!a.is_lit()) return a;
        L m = choice_atom();
        L u = val_next(m, true);
        emit_always({a, u, lneg(m)}, {});
        emit_always({m, lneg(a)}, {});
        emit_always({m, lneg(u)}, {});
        return m;
      }
      case Op::Until: {
        L a = val(nd.lhs), b = val(nd.rhs);
        if (!b.is_lit()) return b.konst ? ltrue() : lfalse();
        if (!a.is_lit() && !a.konst) return b;
        L m = choice_atom();
        L u = val_next(m, false);
        emit_always({b, lneg(m)}, {});
        if (a.is_lit())
          emit_always({a, u, lneg(m)}, {});
        else
          emit_always({u, lneg(m)}, {});
        if (a.is_lit())
          emit_always({m, lneg(b), lneg(a)}, {});
        emit_always({m, lneg(b), lneg(u)}, {});
        return m;
      }
      case Op::Release: {
        L a = val(nd.lhs), b = val(nd.rhs);
        if (!b.is_lit()) return b.konst ? ltrue() : lfalse();
        if (!a.is_lit() && a.konst) return b;
        L m = choice_atom();
        L u = val_next(m, true);
        if (a.is_lit()) emit_always({b, a, lneg(m)}, {});
        emit_always({b, u, lneg(m)}, {});
        emit_always({m, lneg(b)}, {});
        if (a.is_lit())
          emit_always({m, lneg(a), lneg(u)}, {});
        else
          emit_always({m, lneg(u)}, {});
        return m;
      }
      default:
        throw InputError("past operator in a rule head is not reducible");
    }
  }

  std::vector<HeadClause> htok_uncached(Fid f) {
    const FNode nd = s_.node(f);
    switch (nd.op) {
      case Op::Top: return {};
      case Op::Bot: return {{{}, {}}};
      case Op::Atom: return {{{lof(nd.atom)}, {}}};
      case Op::Neg:
      case Op::Impl: {
        auto in = as_neg(s_, f);
        if (!in) throw InputError("implication inside a rule head is not reducible");
        if (s_.op(*in) == Op::Atom)
          return {{{lof(TemporalLiteral{s_.node(*in).atom, false, true})}, {}}};
        if (past_free(*in) && neg_free(*in)) return htok(nnf_neg(*in));
        if (future_free(*in)) {
          L z = blab(*in);
          if (!z.is_lit())
            return z.konst ? std::vector<HeadClause>{{{}, {}}} : std::vector<HeadClause>{};
          if (z.lit.neg || z.lit.prev) z = derived(*in, z);
          return {{{lneg(z)}, {}}};
        }
        throw InputError("nested negation under a negated head is not reducible");
      }
      case Op::And: {
        auto a = htok(nd.lhs), b = htok(nd.rhs);
        a.insert(a.end(), b.begin(), b.end());
        return a;
      }
      case Op::Or: return clause_cross(htok(nd.lhs), htok(nd.rhs));
      case Op::Final: return {{{lof(last_marker())}, {}}};
      case Op::Next:
      case Op::WNext: {
        auto c = htok(nd.lhs);
        AtomId o = fresh();
        L oprev = lof(TemporalLiteral{o, true, false}, true);
        for (const auto& cl : c) emit_head_clause(Scope::Dyn, {oprev}, cl);
        if (nd.op == Op::Next) emit_final({lof(o)}, {});
        return {{{lof(o)}, {}}};
      }
      case Op::EvAfter: {
        auto c = htok(nd.lhs);
        AtomId o = fresh();
        L u = op_value_next(f);
        L oprev = lof(TemporalLiteral{o, true, false}, true);
        std::vector<HeadClause> out;
        for (const auto& cl : c) {
          HeadClause deferred = cl;
          deferred.lits.push_back(lof(o));
          deferred.bridges.push_back({u, lof(o)});
          emit_head_clause(Scope::Dyn, {oprev}, deferred);
          emit_head_clause(Scope::Fin, {lof(o)}, cl);
          out.push_back(std::move(deferred));
        }
        return out;
      }
      case Op::AlwaysAfter: {
        auto c = htok(nd.lhs);
        AtomId o = fresh();
        for (const auto& cl : c) emit_head_clause(Scope::Alw, {lof(o)}, cl);
        emit_dynamic({lof(TemporalLiteral{o, true, false}, true)}, {lof(o)});
        return {{{lof(o)}, {}}};
      }
      case Op::Until: {
        auto ca = htok(nd.lhs), cb = htok(nd.rhs);
        AtomId x = fresh();
        AtomId tok = fresh();
        L u = op_value_next(f);
        for (const auto& clb : cb) {
          HeadClause w = clb;
          w.lits.push_back(lof(tok));
          w.bridges.push_back({u, lof(tok)});
          emit_head_clause(Scope::Alw, {lof(x)}, w);
        }
        for (const auto& cla : ca) emit_head_clause(Scope::Alw, {lof(tok)}, cla);
        emit_dynamic({lof(TemporalLiteral{tok, true, false}, true)}, {lof(x)});
        emit_final({lof(tok)}, {});
        return {{{lof(x)}, {}}};
      }
      case Op::Release: {
        auto ca = htok(nd.lhs), cb = htok(nd.rhs);
        AtomId x = fresh();
        for (const auto& clb : cb) emit_head_clause(Scope::Alw, {lof(x)}, clb);
        if (ca.empty()) {
          // releasing condition is constantly true: only the now-part remains
          return {{{lof(x)}, {}}};
        }
        AtomId tok = fresh();
        L u = op_value_next(f);
        for (const auto& cla : ca) {
          HeadClause w = cla;
          w.lits.push_back(lof(tok));
          w.bridges.push_back({u, lof(tok)});
          emit_head_clause(Scope::Alw, {lof(x)}, w);
        }
        emit_dynamic({lof(TemporalLiteral{tok, true, false}, true)}, {lof(x)});
        return {{{lof(x)}, {}}};
      }
      default:
        throw InputError("past operator in a rule head is not reducible");
    }
  }

  AtomId last_marker() {
    if (last_marker_ == 0) {
      last_marker_ = fresh();
      emit_final({}, {lof(last_marker_)});
      emit_dynamic({lof(TemporalLiteral{last_marker_, true, false}, true)}, {});
    }
    return last_marker_;
  }

  bool past_free(Fid f) const {
    const FNode nd = s_.node(f);
    switch (nd.op) {
      case Op::Prev:
      case Op::WPrev:
      case Op::Since:
      case Op::Trigger:
      case Op::AlwaysBefore:
      case Op::EvBefore:
      case Op::Initial:
        return false;
      default: break;
    }
    if (nd.lhs != kNoF && !past_free(nd.lhs)) return false;
    if (nd.rhs != kNoF && !past_free(nd.rhs)) return false;
    return true;
  }

  bool future_free(Fid f) const {
    const FNode nd = s_.node(f);
    switch (nd.op) {
      case Op::Next:
      case Op::WNext:
      case Op::Until:
      case Op::Release:
      case Op::AlwaysAfter:
      case Op::EvAfter:
      case Op::Final:
        return false;
      default: break;
    }
    if (nd.lhs != kNoF && !future_free(nd.lhs)) return false;
    if (nd.rhs != kNoF && !future_free(nd.rhs)) return false;
    return true;
  }

  bool neg_free(Fid f) const {
    const FNode nd = s_.node(f);
    if (nd.op == Op::Neg || nd.op == Op::Impl || nd.op == Op::Iff) return false;
    if (nd.lhs != kNoF && !neg_free(nd.lhs)) return false;
    if (nd.rhs != kNoF && !neg_free(nd.rhs)) return false;
    return true;
  }

  std::unordered_map<Fid, L> bcache_;
  std::unordered_map<Fid, std::vector<HeadClause>> hcache_;
  std::unordered_map<Fid, L> vcache_;
  std::map<std::pair<AtomId, bool>, L> vnext_cache_;
  std::unordered_map<Fid, L> opnext_cache_;
  std::unordered_map<Fid, AtomId> derived_;
  AtomId last_marker_ = 0;

 public:
  // ---- statement-level drivers ----

  // Full translation of one statement: split conjunctions, then keep the
  // rule structure and label only the non-literal parts.
  void statement(Fid phi) {
    Unwrapped u = unwrap(s_, phi);
    std::vector<Fid> parts;
    flatten(s_, u.inner, Op::And, parts);
    for (Fid g : parts) rule_like(g, u.scope);
  }

  void rule_like(Fid g, Scope sc) {
    RuleParts rp = rule_view(s_, g);
    std::vector<L> body, head;
    if (rp.is_impl) {
      std::vector<Fid> bs;
      flatten(s_, rp.body, Op::And, bs);
      for (Fid c : bs) body.push_back(body_elem(c));
    }
    if (rp.head != kNoF) {
      std::vector<Fid> hs;
      flatten(s_, rp.head, Op::Or, hs);
      for (Fid d : hs) head.push_back(label(d));
    }
    emit_scoped(sc, body, head);
  }

  L body_elem(Fid c) {
    if (auto li = as_literal(s_, c)) return lof(li->lit, li->strong_prev);
    if (auto in = as_neg(s_, c)) {
      if (auto dnf = lit_dnf(*in)) {
        if (dnf->empty()) return ltrue();  // negation of falsum
        AtomId z = fresh();
        for (const auto& branch : *dnf) emit_always(branch, {lof(z)});
        return lneg(lof(z));
      }
    }
    return label(c);
  }

  // DNF when f is a pure and/or tree over literals; nullopt otherwise.
  std::optional<std::vector<std::vector<L>>> lit_dnf(Fid f) {
    const FNode nd = s_.node(f);
    if (nd.op == Op::Top) return std::vector<std::vector<L>>{{}};
    if (nd.op == Op::Bot) return std::vector<std::vector<L>>{};
    if (auto li = as_literal(s_, f))
      return std::vector<std::vector<L>>{{lof(li->lit, li->strong_prev)}};
    if (nd.op == Op::And || nd.op == Op::Or) {
      auto a = lit_dnf(nd.lhs), b = lit_dnf(nd.rhs);
      if (!a || !b) return std::nullopt;
      std::vector<std::vector<L>> out;
      if (nd.op == Op::And) {
        for (const auto& x : *a)
          for (const auto& y : *b) {
            std::vector<L> m = x;
            m.insert(m.end(), y.begin(), y.end());
            out.push_back(std::move(m));
          }
      } else {
        out = *a;
        out.insert(out.end(), b->begin(), b->end());
      }
      if (out.size() > 32) return std::nullopt;
      return out;
    }
    return std::nullopt;
  }

  // Present-centered reduction of a validated past-future rule.
  void pf_rule(const PastFutureRule& r) {
    std::vector<L> body;
    std::vector<Fid> bs;
    flatten(s_, r.body, Op::And, bs);
    for (Fid c : bs) {
      if (auto li = as_literal(s_, c)) {
        body.push_back(lof(li->lit, li->strong_prev));
        continue;
      }
      if (auto in = as_neg(s_, c)) {
        L l = blab(*in);
        if (l.is_lit() && (l.lit.neg || l.lit.prev)) l = derived(*in, l);
        body.push_back(lneg(l));
        continue;
      }
      body.push_back(blab(c));
    }
    std::vector<HeadClause> clauses{{{}, {}}};
    std::vector<Fid> hs;
    flatten(s_, r.head, Op::Or, hs);
    bool first = true;
    for (Fid d : hs) {
      auto cl = htok(d);
      clauses = first ? cl : clause_cross(clauses, cl);
      first = false;
    }
    Scope sc = r.scope == PfScope::InitialRule   ? Scope::Init
               : r.scope == PfScope::DynamicRule ? Scope::Dyn
               : r.scope == PfScope::FinalRule   ? Scope::Fin
                                                 : Scope::Alw;
    for (const auto& c : clauses) emit_head_clause(sc, body, c);
  }
};

// ---------------------------------------------------------------- classify

std::optional<std::vector<TemporalRule>> classify_parts(const FormulaStore& s, Fid f) {
  Unwrapped u = unwrap(s, f);
  std::vector<Fid> parts;
  flatten(s, u.inner, Op::And, parts);
  std::vector<TemporalRule> out;
  for (Fid g : parts) {
    RuleParts rp = rule_view(s, g);
    std::vector<L> body, head;
    bool has_i = false, has_f = false, skip_rule = false;
    if (rp.is_impl) {
      std::vector<Fid> bs;
      flatten(s, rp.body, Op::And, bs);
      for (Fid c : bs) {
        Op op = s.op(c);
        if (op == Op::Top) continue;
        if (op == Op::Bot) { skip_rule = true; break; }
        if (op == Op::Initial) { has_i = true; continue; }
        if (op == Op::Final) { has_f = true; continue; }
        auto li = as_literal(s, c);
        if (!li) return std::nullopt;
        body.push_back(lof(li->lit, li->strong_prev));
      }
    }
    if (!skip_rule && rp.head != kNoF) {
      std::vector<Fid> hs;
      flatten(s, rp.head, Op::Or, hs);
      for (Fid d : hs) {
        Op op = s.op(d);
        if (op == Op::Bot) continue;
        if (op == Op::Top) { skip_rule = true; break; }
        auto li = as_literal(s, d);
        if (!li) return std::nullopt;
        head.push_back(lof(li->lit, li->strong_prev));
      }
    }
    if (skip_rule) continue;
    Scope eff = u.scope;
    if (has_i || has_f) {
      if (has_i && has_f) return std::nullopt;
      if (has_i) {
        if (u.scope == Scope::Alw || u.scope == Scope::Init) eff = Scope::Init;
        else if (u.scope == Scope::Dyn) continue;  // never fires after time 0
        else return std::nullopt;
      } else {
        if (u.scope == Scope::Alw || u.scope == Scope::Fin) eff = Scope::Fin;
        else return std::nullopt;
      }
    }
    if (eff == Scope::Fin) {
      for (const auto& l : body)
        if (l.is_lit() && l.lit.prev) return std::nullopt;
      for (const auto& l : head)
        if (l.is_lit() && l.lit.prev) return std::nullopt;
    }
    switch (eff) {
      case Scope::Init: emit_initial_rule(out, body, head); break;
      case Scope::Dyn: emit_rule(out, RuleKind::Dynamic, body, head); break;
      case Scope::Fin: emit_rule(out, RuleKind::Final, body, head); break;
      case Scope::Alw:
        emit_initial_rule(out, body, head);
        emit_rule(out, RuleKind::Dynamic, body, head);
        break;
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<TemporalRule>> classify_statement(const FormulaStore& store,
                                                            Fid f) {
  return classify_parts(store, f);
}

TemporalProgram to_normal_form(FormulaStore& store, const Theory& th) {
  Builder b(store);
  for (Fid f : th.formulas) {
    if (auto rules = classify_parts(store, f))
      b.rules.insert(b.rules.end(), rules->begin(), rules->end());
    else
      b.statement(f);
  }
  TemporalProgram p;
  p.alphabet = th.alphabet;
  p.aux_alphabet = Alphabet::sorted(store, b.aux);
  p.rules = std::move(b.rules);
  return p;
}

namespace {

const char* op_text(Op op) {
  switch (op) {
    case Op::Next: return "#next";
    case Op::WNext: return "#next^";
    case Op::Until: return "#until";
    case Op::Release: return "#release";
    case Op::AlwaysAfter: return "#always+";
    case Op::EvAfter: return "#eventually+";
    case Op::Final: return "#final";
    case Op::Prev: return "#previous";
    case Op::WPrev: return "#previous^";
    case Op::Since: return "#since";
    case Op::Trigger: return "#trigger";
    case Op::AlwaysBefore: return "#always-";
    case Op::EvBefore: return "#eventually-";
    case Op::Initial: return "#initial";
    default: return "?";
  }
}

bool scan_side(const FormulaStore& s, Fid f, bool future_side, std::string* why) {
  const FNode nd = s.node(f);
  bool bad = false;
  switch (nd.op) {
    case Op::Next:
    case Op::WNext:
    case Op::Until:
    case Op::Release:
    case Op::AlwaysAfter:
    case Op::EvAfter:
    case Op::Final:
      bad = !future_side;
      break;
    case Op::Prev:
    case Op::WPrev:
    case Op::Since:
    case Op::Trigger:
    case Op::AlwaysBefore:
    case Op::EvBefore:
    case Op::Initial:
      bad = future_side;
      break;
    case Op::Iff:
      if (why)
        *why = std::string("equivalence in rule ") + (future_side ? "head" : "body") +
               ": " + print_formula(s, f);
      return false;
    case Op::Impl:
      if (s.op(nd.rhs) != Op::Bot) {
        if (why)
          *why = std::string("implication in rule ") + (future_side ? "head" : "body") +
                 ": " + print_formula(s, f);
        return false;
      }
      break;
    default:
      break;
  }
  if (bad) {
    if (why)
      *why = std::string(future_side ? "past" : "future") + " operator '" +
             op_text(nd.op) + "' in rule " + (future_side ? "head" : "body") + ": " +
             print_formula(s, f);
    return false;
  }
  if (nd.lhs != kNoF && !scan_side(s, nd.lhs, future_side, why)) return false;
  if (nd.rhs != kNoF && !scan_side(s, nd.rhs, future_side, why)) return false;
  return true;
}

}  // namespace

std::optional<PastFutureRule> as_past_future_rule(const FormulaStore& store, Fid f,
                                                  std::string* why) {
  Unwrapped u = unwrap(store, f);
  RuleParts rp = rule_view(store, u.inner);
  // only constant nodes are created here; hash-consing keeps ids stable
  FormulaStore& s = const_cast<FormulaStore&>(store);
  PastFutureRule r;
  r.scope = u.scope == Scope::Init  ? PfScope::InitialRule
            : u.scope == Scope::Dyn ? PfScope::DynamicRule
            : u.scope == Scope::Fin ? PfScope::FinalRule
                                    : PfScope::AlwaysRule;
  r.body = rp.is_impl ? rp.body : s.top();
  r.head = rp.head == kNoF ? s.bot() : rp.head;
  if (!scan_side(store, r.body, false, why)) return std::nullopt;
  if (!scan_side(store, r.head, true, why)) return std::nullopt;
  return r;
}

TemporalProgram reduce_past_future(FormulaStore& store, const PastFutureRule& r) {
  Builder b(store);
  b.pf_rule(r);
  TemporalProgram p;
  std::vector<AtomId> atoms;
  store.collect_atoms(r.body, atoms);
  store.collect_atoms(r.head, atoms);
  p.alphabet = Alphabet::sorted(store, std::move(atoms));
  p.aux_alphabet = Alphabet::sorted(store, b.aux);
  p.rules = std::move(b.rules);
  return p;
}

TemporalProgram reduce_theory(FormulaStore& store, const Theory& th) {
  Builder b(store);
  for (Fid f : th.formulas) {
    if (auto rules = classify_parts(store, f)) {
      bool pc = true;
      for (const auto& r : *rules)
        if (!r.present_centered()) pc = false;
      if (pc) {
        b.rules.insert(b.rules.end(), rules->begin(), rules->end());
        continue;
      }
    }
    std::string why;
    if (auto pf = as_past_future_rule(store, f, &why)) {
      b.pf_rule(*pf);
      continue;
    }
    // last resort: the full translation, usable when it happens to come out
    // present-centered (purely propositional statements, for instance)
    Theory single;
    single.alphabet = th.alphabet;
    single.formulas = {f};
    TemporalProgram nf = to_normal_form(store, single);
    if (!nf.present_centered())
      throw InputError("statement '" + print_formula(store, f) +
                       "' is not reducible to a present-centered program: " + why);
    b.rules.insert(b.rules.end(), nf.rules.begin(), nf.rules.end());
    b.aux.insert(b.aux.end(), nf.aux_alphabet.atoms.begin(),
                 nf.aux_alphabet.atoms.end());
  }
  TemporalProgram p;
  p.alphabet = th.alphabet;
  p.aux_alphabet = Alphabet::sorted(store, b.aux);
  p.rules = std::move(b.rules);
  return p;
}

std::string normalized_listing(FormulaStore& store, const Theory& th, bool core) {
  std::string out;
  if (core) {
    for (Fid f : th.formulas) {
      out += print_formula(store, desugar(store, f));
      out += ".\n";
    }
    return out;
  }
  int current = -1;  // 0 initial, 1 dynamic, 2 final
  auto switch_to = [&](int k) {
    if (current == k) return;
    current = k;
    out += k == 0 ? "#program initial.\n"
                  : k == 1 ? "#program dynamic.\n" : "#program final.\n";
  };
  for (Fid f : th.formulas) {
    if (auto rules = classify_parts(store, f)) {
      for (const auto& r : *rules) {
        switch_to(r.kind == RuleKind::Initial ? 0 : r.kind == RuleKind::Dynamic ? 1 : 2);
        out += print_rule(store, r);
        out += '\n';
      }
    } else {
      switch_to(0);
      out += print_formula(store, f);
      out += ".\n";
    }
  }
  return out;
}

}  // namespace teltrace
