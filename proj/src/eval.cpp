#include "teltrace/eval.hpp"

#include "teltrace/errors.hpp"

namespace teltrace {

CompiledTheory::CompiledTheory(const FormulaStore& store, const Alphabet& alphabet,
                               const std::vector<Fid>& formulas)
    : alphabet_(alphabet) {
  roots_.reserve(formulas.size());
  for (Fid f : formulas) roots_.push_back(compile(store, f));
}

int CompiledTheory::compile(const FormulaStore& store, Fid f) {
  auto it = index_.find(f);
  if (it != index_.end()) return it->second;
  const FNode& nd = store.node(f);
  ENode en{nd.op, -1, -1, -1};
  if (nd.op == Op::Atom) {
    en.atom_bit = alphabet_.index_of(nd.atom);
    if (en.atom_bit < 0)
      throw InputError("atom '" + store.atom_name(nd.atom) + "' not in the alphabet");
  }
  if (nd.lhs != kNoF) en.lhs = compile(store, nd.lhs);
  if (nd.rhs != kNoF) en.rhs = compile(store, nd.rhs);
  int idx = static_cast<int>(nodes_.size());
  nodes_.push_back(en);
  index_.emplace(f, idx);
  return idx;
}

Evaluator::Evaluator(const CompiledTheory& ct) : ct_(ct) {
  there_.resize(ct.node_count());
  here_.resize(ct.node_count());
}

namespace {

inline std::uint64_t prefix_and(std::uint64_t x, int len) {
  for (int s = 1; s < len; s <<= 1) x &= (x << s) | ((1ull << s) - 1);
  return x;
}
inline std::uint64_t prefix_or(std::uint64_t x, int len) {
  for (int s = 1; s < len; s <<= 1) x |= x << s;
  return x;
}
inline std::uint64_t suffix_and(std::uint64_t x, std::uint64_t full, int len) {
  for (int s = 1; s < len; s <<= 1) x &= (x >> s) | (full & ~(full >> s));
  return x;
}
inline std::uint64_t suffix_or(std::uint64_t x, int len) {
  for (int s = 1; s < len; s <<= 1) x |= x >> s;
  return x;
}

}  // namespace

void Evaluator::run_there(const Trace& t) {
  len_ = static_cast<int>(t.states.size());
  if (len_ > 62) throw BudgetError("trace longer than 62 states");
  full_ = len_ >= 64 ? ~0ull : ((1ull << len_) - 1);
  const auto& nodes = ct_.nodes_;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    std::uint64_t a = nd.lhs >= 0 ? there_[nd.lhs] : 0;
    std::uint64_t b = nd.rhs >= 0 ? there_[nd.rhs] : 0;
    std::uint64_t r = 0;
    switch (nd.op) {
      case Op::Atom:
        for (int k = 0; k < len_; ++k) r |= (t.states[k] >> nd.atom_bit & 1) << k;
        break;
      case Op::Bot: r = 0; break;
      case Op::Top: r = full_; break;
      case Op::And: r = a & b; break;
      case Op::Or: r = a | b; break;
      case Op::Neg: r = ~a & full_; break;
      case Op::Impl: r = (~a | b) & full_; break;
      case Op::Iff: r = ~(a ^ b) & full_; break;
      case Op::Prev: r = (a << 1) & full_; break;
      case Op::WPrev: r = ((a << 1) | 1) & full_; break;
      case Op::Next: r = a >> 1; break;
      case Op::WNext: r = (a >> 1) | (1ull << (len_ - 1)); break;
      case Op::Initial: r = 1; break;
      case Op::Final: r = 1ull << (len_ - 1); break;
      case Op::AlwaysBefore: r = prefix_and(a, len_); break;
      case Op::EvBefore: r = prefix_or(a, len_); break;
      case Op::AlwaysAfter: r = suffix_and(a, full_, len_); break;
      case Op::EvAfter: r = suffix_or(a, len_); break;
      case Op::Since: {
        std::uint64_t prev = 0;
        for (int k = 0; k < len_; ++k) {
          prev = ((b >> k) & 1) | ((a >> k) & prev & 1);
          r |= prev << k;
        }
        break;
      }
      case Op::Trigger: {
        std::uint64_t prev = 1;
        for (int k = 0; k < len_; ++k) {
          prev = ((b >> k) & 1) & (((a >> k) & 1) | prev);
          r |= prev << k;
        }
        break;
      }
      case Op::Until: {
        std::uint64_t nxt = 0;
        for (int k = len_ - 1; k >= 0; --k) {
          nxt = ((b >> k) & 1) | ((a >> k) & nxt & 1);
          r |= nxt << k;
        }
        break;
      }
      case Op::Release: {
        std::uint64_t nxt = 1;
        for (int k = len_ - 1; k >= 0; --k) {
          nxt = ((b >> k) & 1) & (((a >> k) & 1) | nxt);
          r |= nxt << k;
        }
        break;
      }
    }
    there_[i] = r;
  }
}

void Evaluator::run_here(const Trace& h) {
  const auto& nodes = ct_.nodes_;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    std::uint64_t a = nd.lhs >= 0 ? here_[nd.lhs] : 0;
    std::uint64_t b = nd.rhs >= 0 ? here_[nd.rhs] : 0;
    std::uint64_t r = 0;
    switch (nd.op) {
      case Op::Atom:
        for (int k = 0; k < len_; ++k) r |= (h.states[k] >> nd.atom_bit & 1) << k;
        break;
      case Op::Bot: r = 0; break;
      case Op::Top: r = full_; break;
      case Op::And: r = a & b; break;
      case Op::Or: r = a | b; break;
      // Negation and implication consult both worlds (persistence makes the
      // there-component authoritative for refutation).
      case Op::Neg: r = ~there_[nd.lhs] & full_; break;
      case Op::Impl:
        r = (~a | b) & (~there_[nd.lhs] | there_[nd.rhs]) & full_;
        break;
      case Op::Iff:
        r = (~a | b) & (~there_[nd.lhs] | there_[nd.rhs]) &
            (~b | a) & (~there_[nd.rhs] | there_[nd.lhs]) & full_;
        break;
      case Op::Prev: r = (a << 1) & full_; break;
      case Op::WPrev: r = ((a << 1) | 1) & full_; break;
      case Op::Next: r = a >> 1; break;
      case Op::WNext: r = (a >> 1) | (1ull << (len_ - 1)); break;
      case Op::Initial: r = 1; break;
      case Op::Final: r = 1ull << (len_ - 1); break;
      case Op::AlwaysBefore: r = prefix_and(a, len_); break;
      case Op::EvBefore: r = prefix_or(a, len_); break;
      case Op::AlwaysAfter: r = suffix_and(a, full_, len_); break;
      case Op::EvAfter: r = suffix_or(a, len_); break;
      case Op::Since: {
        std::uint64_t prev = 0;
        for (int k = 0; k < len_; ++k) {
          prev = ((b >> k) & 1) | ((a >> k) & prev & 1);
          r |= prev << k;
        }
        break;
      }
      case Op::Trigger: {
        std::uint64_t prev = 1;
        for (int k = 0; k < len_; ++k) {
          prev = ((b >> k) & 1) & (((a >> k) & 1) | prev);
          r |= prev << k;
        }
        break;
      }
      case Op::Until: {
        std::uint64_t nxt = 0;
        for (int k = len_ - 1; k >= 0; --k) {
          nxt = ((b >> k) & 1) | ((a >> k) & nxt & 1);
          r |= nxt << k;
        }
        break;
      }
      case Op::Release: {
        std::uint64_t nxt = 1;
        for (int k = len_ - 1; k >= 0; --k) {
          nxt = ((b >> k) & 1) & (((a >> k) & 1) | nxt);
          r |= nxt << k;
        }
        break;
      }
    }
    here_[i] = r;
  }
}

bool Evaluator::all_here_at0() const {
  for (std::size_t i = 0; i < ct_.roots_.size(); ++i)
    if (!(here_[ct_.roots_[i]] & 1)) return false;
  return true;
}

bool Evaluator::all_there_at0() const {
  for (std::size_t i = 0; i < ct_.roots_.size(); ++i)
    if (!(there_[ct_.roots_[i]] & 1)) return false;
  return true;
}

namespace {
void check_k(int k, int length) {
  if (k < 0 || k > length)
    throw InputError("time point " + std::to_string(k) + " outside 0.." +
                     std::to_string(length));
}
}  // namespace

bool sat(const FormulaStore& store, const Alphabet& alphabet, const HTTrace& m,
         int k, Fid f) {
  check_k(k, m.length());
  CompiledTheory ct(store, alphabet, {f});
  Evaluator ev(ct);
  ev.run_there(m.there);
  ev.run_here(m.here);
  return ev.here_at(ct.root(0), k);
}

bool sat_ltl(const FormulaStore& store, const Alphabet& alphabet, const Trace& t,
             int k, Fid f) {
  check_k(k, t.length());
  CompiledTheory ct(store, alphabet, {f});
  Evaluator ev(ct);
  ev.run_there(t);
  return ev.there_at(ct.root(0), k);
}

bool is_model(const FormulaStore& store, const Theory& th, const HTTrace& m) {
  CompiledTheory ct(store, th.alphabet, th.formulas);
  Evaluator ev(ct);
  ev.run_there(m.there);
  ev.run_here(m.here);
  return ev.all_here_at0();
}

bool is_model_ltl(const FormulaStore& store, const Theory& th, const Trace& t) {
  CompiledTheory ct(store, th.alphabet, th.formulas);
  Evaluator ev(ct);
  ev.run_there(t);
  return ev.all_there_at0();
}

namespace ref {

namespace {

bool atom_in(const Trace& t, int k, int bit) { return t.states[k] >> bit & 1; }

// m.here is the world being asked; the there-trace stays fixed.
bool sat_rec(const FormulaStore& s, const Alphabet& al, const HTTrace& m, int k, Fid f) {
  const FNode nd = s.node(f);
  int lambda = m.length();
  switch (nd.op) {
    case Op::Bot: return false;
    case Op::Top: return true;
    case Op::Atom: {
      int bit = al.index_of(nd.atom);
      if (bit < 0) throw InputError("atom '" + s.atom_name(nd.atom) + "' not in the alphabet");
      return atom_in(m.here, k, bit);
    }
    case Op::And: return sat_rec(s, al, m, k, nd.lhs) && sat_rec(s, al, m, k, nd.rhs);
    case Op::Or: return sat_rec(s, al, m, k, nd.lhs) || sat_rec(s, al, m, k, nd.rhs);
    case Op::Impl: {
      HTTrace tt{m.there, m.there};
      bool at_h = !sat_rec(s, al, m, k, nd.lhs) || sat_rec(s, al, m, k, nd.rhs);
      bool at_t = !sat_rec(s, al, tt, k, nd.lhs) || sat_rec(s, al, tt, k, nd.rhs);
      return at_h && at_t;
    }
    case Op::Neg: {
      HTTrace tt{m.there, m.there};
      bool at_h = !sat_rec(s, al, m, k, nd.lhs);
      bool at_t = !sat_rec(s, al, tt, k, nd.lhs);
      return at_h && at_t;
    }
    case Op::Iff: {
      HTTrace tt{m.there, m.there};
      bool lh = sat_rec(s, al, m, k, nd.lhs), rh = sat_rec(s, al, m, k, nd.rhs);
      bool lt = sat_rec(s, al, tt, k, nd.lhs), rt = sat_rec(s, al, tt, k, nd.rhs);
      return (!lh || rh) && (!lt || rt) && (!rh || lh) && (!rt || lt);
    }
    case Op::Prev: return k > 0 && sat_rec(s, al, m, k - 1, nd.lhs);
    case Op::WPrev: return k == 0 || sat_rec(s, al, m, k - 1, nd.lhs);
    case Op::Next: return k < lambda && sat_rec(s, al, m, k + 1, nd.lhs);
    case Op::WNext: return k == lambda || sat_rec(s, al, m, k + 1, nd.lhs);
    case Op::Initial: return k == 0;
    case Op::Final: return k == lambda;
    case Op::AlwaysBefore:
      for (int i = 0; i <= k; ++i)
        if (!sat_rec(s, al, m, i, nd.lhs)) return false;
      return true;
    case Op::EvBefore:
      for (int i = 0; i <= k; ++i)
        if (sat_rec(s, al, m, i, nd.lhs)) return true;
      return false;
    case Op::AlwaysAfter:
      for (int i = k; i <= lambda; ++i)
        if (!sat_rec(s, al, m, i, nd.lhs)) return false;
      return true;
    case Op::EvAfter:
      for (int i = k; i <= lambda; ++i)
        if (sat_rec(s, al, m, i, nd.lhs)) return true;
      return false;
    case Op::Since:
      for (int j = 0; j <= k; ++j) {
        if (!sat_rec(s, al, m, j, nd.rhs)) continue;
        bool all = true;
        for (int i = j + 1; i <= k; ++i)
          if (!sat_rec(s, al, m, i, nd.lhs)) { all = false; break; }
        if (all) return true;
      }
      return false;
    case Op::Trigger:
      for (int j = 0; j <= k; ++j) {
        if (sat_rec(s, al, m, j, nd.rhs)) continue;
        bool some = false;
        for (int i = j + 1; i <= k; ++i)
          if (sat_rec(s, al, m, i, nd.lhs)) { some = true; break; }
        if (!some) return false;
      }
      return true;
    case Op::Until:
      for (int j = k; j <= lambda; ++j) {
        if (!sat_rec(s, al, m, j, nd.rhs)) continue;
        bool all = true;
        for (int i = k; i < j; ++i)
          if (!sat_rec(s, al, m, i, nd.lhs)) { all = false; break; }
        if (all) return true;
      }
      return false;
    case Op::Release:
      for (int j = k; j <= lambda; ++j) {
        if (sat_rec(s, al, m, j, nd.rhs)) continue;
        bool some = false;
        for (int i = k; i < j; ++i)
          if (sat_rec(s, al, m, i, nd.lhs)) { some = true; break; }
        if (!some) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

bool sat(const FormulaStore& store, const Alphabet& alphabet, const HTTrace& m,
         int k, Fid f) {
  check_k(k, m.length());
  return sat_rec(store, alphabet, m, k, f);
}

bool sat_ltl(const FormulaStore& store, const Alphabet& alphabet, const Trace& t,
             int k, Fid f) {
  check_k(k, t.length());
  return sat_rec(store, alphabet, HTTrace{t, t}, k, f);
}

}  // namespace ref

}  // namespace teltrace
