#include "teltrace/transform.hpp"

#include "teltrace/errors.hpp"

namespace teltrace {

Fid desugar(FormulaStore& s, Fid f) {
  const FNode nd = s.node(f);
  Fid a = nd.lhs == kNoF ? kNoF : desugar(s, nd.lhs);
  Fid b = nd.rhs == kNoF ? kNoF : desugar(s, nd.rhs);
  switch (nd.op) {
    case Op::Atom:
    case Op::Bot:
      return f;
    case Op::Top:
      return s.impl(s.bot(), s.bot());
    case Op::Neg:
      return s.impl(a, s.bot());
    case Op::Iff:
      return s.conj(s.impl(a, b), s.impl(b, a));
    case Op::AlwaysBefore:
      return s.make(Op::Trigger, s.bot(), a);
    case Op::EvBefore:
      return s.make(Op::Since, desugar(s, s.top()), a);
    case Op::Initial:
      return desugar(s, s.neg(s.make(Op::Prev, s.top())));
    case Op::WPrev:
      return s.disj(s.make(Op::Prev, a), desugar(s, s.make(Op::Initial)));
    case Op::AlwaysAfter:
      return s.make(Op::Release, s.bot(), a);
    case Op::EvAfter:
      return s.make(Op::Until, desugar(s, s.top()), a);
    case Op::Final:
      return desugar(s, s.neg(s.make(Op::Next, s.top())));
    case Op::WNext:
      return s.disj(s.make(Op::Next, a), desugar(s, s.make(Op::Final)));
    case Op::And:
    case Op::Or:
    case Op::Impl:
    case Op::Since:
    case Op::Trigger:
    case Op::Until:
    case Op::Release:
      return b == kNoF ? s.make(nd.op, a) : s.make(nd.op, a, b);
    case Op::Prev:
    case Op::Next:
      return s.make(nd.op, a);
  }
  return f;
}

Fid dual_boolean(FormulaStore& s, Fid f) {
  const FNode nd = s.node(f);
  switch (nd.op) {
    case Op::Impl:
    case Op::Iff:
    case Op::Neg:
      throw InputError("boolean dual is undefined for implication and negation");
    case Op::Initial:
    case Op::Final:
      throw InputError("boolean dual is undefined for #initial/#final");
    default:
      break;
  }
  Fid a = nd.lhs == kNoF ? kNoF : dual_boolean(s, nd.lhs);
  Fid b = nd.rhs == kNoF ? kNoF : dual_boolean(s, nd.rhs);
  auto swapped = [&](Op op) {
    switch (op) {
      case Op::And: return Op::Or;
      case Op::Or: return Op::And;
      case Op::Top: return Op::Bot;
      case Op::Bot: return Op::Top;
      case Op::Until: return Op::Release;
      case Op::Release: return Op::Until;
      case Op::Next: return Op::WNext;
      case Op::WNext: return Op::Next;
      case Op::AlwaysAfter: return Op::EvAfter;
      case Op::EvAfter: return Op::AlwaysAfter;
      case Op::Since: return Op::Trigger;
      case Op::Trigger: return Op::Since;
      case Op::Prev: return Op::WPrev;
      case Op::WPrev: return Op::Prev;
      case Op::AlwaysBefore: return Op::EvBefore;
      case Op::EvBefore: return Op::AlwaysBefore;
      default: return op;
    }
  };
  if (nd.op == Op::Atom) return f;
  Op op = swapped(nd.op);
  if (a == kNoF) return s.make(op);
  if (b == kNoF) return s.make(op, a);
  return s.make(op, a, b);
}

Fid swap_time(FormulaStore& s, Fid f) {
  const FNode nd = s.node(f);
  Fid a = nd.lhs == kNoF ? kNoF : swap_time(s, nd.lhs);
  Fid b = nd.rhs == kNoF ? kNoF : swap_time(s, nd.rhs);
  auto swapped = [&](Op op) {
    switch (op) {
      case Op::Until: return Op::Since;
      case Op::Since: return Op::Until;
      case Op::Release: return Op::Trigger;
      case Op::Trigger: return Op::Release;
      case Op::Next: return Op::Prev;
      case Op::Prev: return Op::Next;
      case Op::WNext: return Op::WPrev;
      case Op::WPrev: return Op::WNext;
      case Op::AlwaysAfter: return Op::AlwaysBefore;
      case Op::AlwaysBefore: return Op::AlwaysAfter;
      case Op::EvAfter: return Op::EvBefore;
      case Op::EvBefore: return Op::EvAfter;
      case Op::Initial: return Op::Final;
      case Op::Final: return Op::Initial;
      default: return op;
    }
  };
  if (nd.op == Op::Atom) return f;
  Op op = swapped(nd.op);
  if (a == kNoF) return s.make(op);
  if (b == kNoF) return s.make(op, a);
  return s.make(op, a, b);
}

}  // namespace teltrace
