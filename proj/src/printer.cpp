#include "teltrace/printer.hpp"

namespace teltrace {
namespace {

int prec(Op op) {
  switch (op) {
    case Op::Impl:
    case Op::Iff:
      return 1;
    case Op::Or:
      return 2;
    case Op::And:
      return 3;
    case Op::Since:
    case Op::Trigger:
    case Op::Until:
    case Op::Release:
      return 4;
    case Op::Neg:
    case Op::Prev:
    case Op::WPrev:
    case Op::Next:
    case Op::WNext:
    case Op::AlwaysAfter:
    case Op::AlwaysBefore:
    case Op::EvAfter:
    case Op::EvBefore:
      return 5;
    default:
      return 6;
  }
}

const char* token(Op op) {
  switch (op) {
    case Op::Bot: return "#false";
    case Op::Top: return "#true";
    case Op::Initial: return "#initial";
    case Op::Final: return "#final";
    case Op::Neg: return "~";
    case Op::Prev: return "#previous";
    case Op::WPrev: return "#previous^";
    case Op::Next: return "#next";
    case Op::WNext: return "#next^";
    case Op::AlwaysAfter: return "#always+";
    case Op::AlwaysBefore: return "#always-";
    case Op::EvAfter: return "#eventually+";
    case Op::EvBefore: return "#eventually-";
    case Op::Since: return "#since";
    case Op::Trigger: return "#trigger";
    case Op::Until: return "#until";
    case Op::Release: return "#release";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Impl: return "->";
    case Op::Iff: return "<->";
    default: return "?";
  }
}

bool temporal_prefix(Op op) {
  switch (op) {
    case Op::Prev:
    case Op::WPrev:
    case Op::Next:
    case Op::WNext:
    case Op::AlwaysAfter:
    case Op::AlwaysBefore:
    case Op::EvAfter:
    case Op::EvBefore:
      return true;
    default:
      return false;
  }
}

void pr(const FormulaStore& store, Fid f, int min_prec, bool binop_operand,
        std::string& out) {
  const FNode& nd = store.node(f);
  int p = prec(nd.op);
  switch (arity(nd.op)) {
    case 0:
      out += nd.op == Op::Atom ? store.atom_name(nd.atom).c_str() : token(nd.op);
      return;
    case 1: {
      bool parens = p < min_prec || (binop_operand && temporal_prefix(nd.op));
      if (parens) out += '(';
      out += token(nd.op);
      out += ' ';
      pr(store, nd.lhs, p, false, out);
      if (parens) out += ')';
      return;
    }
    default: {
      bool parens = p < min_prec;
      if (parens) out += '(';
      pr(store, nd.lhs, p + 1, true, out);
      out += ' ';
      out += token(nd.op);
      out += ' ';
      pr(store, nd.rhs, p, true, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print_formula(const FormulaStore& store, Fid f) {
  std::string out;
  pr(store, f, 0, false, out);
  return out;
}

}  // namespace teltrace
