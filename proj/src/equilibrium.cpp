#include "teltrace/equilibrium.hpp"

#include <algorithm>
#include <memory>

#include "teltrace/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace teltrace {

namespace {

bool pure_present(const FormulaStore& s, Fid f) {
  const FNode nd = s.node(f);
  switch (nd.op) {
    case Op::Atom:
    case Op::Bot:
    case Op::Top:
      return true;
    case Op::And:
    case Op::Or:
    case Op::Impl:
    case Op::Iff:
      return pure_present(s, nd.lhs) && pure_present(s, nd.rhs);
    case Op::Neg:
      return pure_present(s, nd.lhs);
    default:
      return false;
  }
}

// True when f only relates the current state to its immediate predecessor:
// boolean structure over atoms and single previous-steps.
bool one_step(const FormulaStore& s, Fid f) {
  const FNode nd = s.node(f);
  switch (nd.op) {
    case Op::Atom:
    case Op::Bot:
    case Op::Top:
      return true;
    case Op::And:
    case Op::Or:
    case Op::Impl:
    case Op::Iff:
      return one_step(s, nd.lhs) && one_step(s, nd.rhs);
    case Op::Neg:
      return one_step(s, nd.lhs);
    case Op::Prev:
      return pure_present(s, nd.lhs);
    default:
      return false;
  }
}

enum class LocalKind { Init, Dynamic, Always, Final };

struct LocalFormula {
  LocalKind kind;
  Fid body;
};

// Splits the theory into state-local formulas (compiled into per-state and
// per-transition lookup tables that prune the trace scan) and a residual
// evaluated in full at each surviving candidate. The split is a pure
// optimization: results are identical to scanning everything.
struct Scan {
  Scan(const FormulaStore& store, const Theory& th, int lambda)
      : store_(store), th_(th), lambda_(lambda) {
    n_ = static_cast<int>(th.alphabet.size());
    n_states_ = lambda + 1;
    state_limit_ = 1ull << n_;
    std::vector<LocalFormula> locals;
    bool try_tables = n_ <= 12;
    for (Fid f : th.formulas) {
      LocalFormula lf;
      if (try_tables && match_local(f, lf)) {
        locals.push_back(lf);
      } else {
        residual_.push_back(f);
      }
    }
    full_ct_ = std::make_unique<CompiledTheory>(store, th.alphabet, th.formulas);
    res_ct_ = std::make_unique<CompiledTheory>(store, th.alphabet, residual_);
    build_tables(locals);
  }

  bool match_local(Fid f, LocalFormula& out) const {
    const FNode nd = store_.node(f);
    if (nd.op == Op::WNext && store_.op(nd.lhs) == Op::AlwaysAfter) {
      Fid g = store_.node(nd.lhs).lhs;
      if (one_step(store_, g)) {
        out = {LocalKind::Dynamic, g};
        return true;
      }
      return false;
    }
    if (nd.op == Op::AlwaysAfter) {
      const FNode inner = store_.node(nd.lhs);
      if (inner.op == Op::Impl && store_.op(inner.lhs) == Op::Final &&
          pure_present(store_, inner.rhs)) {
        out = {LocalKind::Final, inner.rhs};
        return true;
      }
      if (one_step(store_, nd.lhs)) {
        out = {LocalKind::Always, nd.lhs};
        return true;
      }
      return false;
    }
    if (pure_present(store_, f)) {
      out = {LocalKind::Init, f};
      return true;
    }
    return false;
  }

  void build_tables(const std::vector<LocalFormula>& locals) {
    init_ok_.assign(state_limit_, 1);
    final_ok_.assign(state_limit_, 1);
    if (locals.empty()) return;
    std::vector<Fid> bodies;
    for (const auto& lf : locals) bodies.push_back(lf.body);
    CompiledTheory ct(store_, th_.alphabet, bodies);
    Evaluator ev(ct);
    Trace one{{0}};
    for (std::uint64_t s = 0; s < state_limit_; ++s) {
      one.states[0] = s;
      ev.run_there(one);
      for (std::size_t i = 0; i < locals.size(); ++i) {
        bool v = ev.there_at(ct.root(i), 0);
        switch (locals[i].kind) {
          case LocalKind::Init:
          case LocalKind::Always:
            // the time-0 instance; a previous-step is false there
            if (!v) init_ok_[s] = 0;
            break;
          case LocalKind::Final:
            if (!v) final_ok_[s] = 0;
            break;
          case LocalKind::Dynamic:
            break;  // no time-0 instance
        }
      }
    }
    bool any_pair = false;
    for (const auto& lf : locals)
      if (lf.kind == LocalKind::Dynamic || lf.kind == LocalKind::Always) any_pair = true;
    if (!any_pair || lambda_ == 0) return;
    pair_ok_.assign(state_limit_ << n_, 1);
    Trace two{{0, 0}};
    for (std::uint64_t p = 0; p < state_limit_; ++p) {
      two.states[0] = p;
      for (std::uint64_t c = 0; c < state_limit_; ++c) {
        two.states[1] = c;
        ev.run_there(two);
        for (std::size_t i = 0; i < locals.size(); ++i) {
          if (locals[i].kind != LocalKind::Dynamic && locals[i].kind != LocalKind::Always)
            continue;
          if (!ev.there_at(ct.root(i), 1)) {
            pair_ok_[(p << n_) | c] = 0;
            break;
          }
        }
      }
    }
  }

  bool pair_ok(std::uint64_t p, std::uint64_t c) const {
    return pair_ok_.empty() || pair_ok_[(p << n_) | c];
  }

  // Enumerates total models; calls sink(trace, evaluator-with-there-run).
  template <typename Sink>
  void totals(Sink&& sink) const {
#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    std::vector<std::vector<Trace>> found(state_limit_);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t s0 = 0; s0 < static_cast<std::int64_t>(state_limit_); ++s0) {
      if (!init_ok_[s0]) continue;
      Evaluator res_ev(*res_ct_);
      Trace t;
      t.states.assign(n_states_, 0);
      t.states[0] = static_cast<std::uint64_t>(s0);
      dfs(1, t, res_ev, found[s0]);
    }
    for (auto& v : found)
      for (Trace& t : v) sink(t);
  }

  void dfs(int level, Trace& t, Evaluator& ev, std::vector<Trace>& out) const {
    if (level == n_states_) {
      if (!final_ok_[t.states[n_states_ - 1]]) return;
      ev.run_there(t);
      if (!ev.all_there_at0()) return;
      out.push_back(t);
      return;
    }
    std::uint64_t prev = t.states[level - 1];
    for (std::uint64_t s = 0; s < state_limit_; ++s) {
      if (!pair_ok(prev, s)) continue;
      t.states[level] = s;
      dfs(level + 1, t, ev, out);
    }
    t.states[level] = 0;
  }

  const FormulaStore& store_;
  const Theory& th_;
  int lambda_;
  int n_;
  int n_states_;
  std::uint64_t state_limit_;
  std::vector<Fid> residual_;
  std::vector<std::uint8_t> init_ok_;
  std::vector<std::uint8_t> pair_ok_;
  std::vector<std::uint8_t> final_ok_;
  std::unique_ptr<CompiledTheory> full_ct_;
  std::unique_ptr<CompiledTheory> res_ct_;
};

void fill_unpack(std::uint64_t bits, int n_states, int n, Trace& t) {
  std::uint64_t state_mask = (1ull << n) - 1;
  t.states.resize(n_states);
  for (int i = 0; i < n_states; ++i) t.states[i] = (bits >> (i * n)) & state_mask;
}

void check_budget(const Theory& th, int lambda, Budget budget, const char* what) {
  long long bits = static_cast<long long>(lambda + 1) *
                   static_cast<long long>(th.alphabet.size());
  budget.require(bits, what);
}

}  // namespace

std::vector<HTTrace> tht_models(const FormulaStore& store, const Theory& th,
                                int lambda, Budget budget) {
  check_budget(th, lambda, budget, "HT-model enumeration");
  Scan scan(store, th, lambda);
  int n = static_cast<int>(th.alphabet.size());
  std::vector<HTTrace> out;
  Evaluator full_ev(*scan.full_ct_);
  Trace here;
  // By persistence, the there-trace of any HT-model is itself a total
  // model, so scanning H below total models only is exhaustive.
  scan.totals([&](const Trace& t) {
    full_ev.run_there(t);
    std::uint64_t tbits = pack(t, n);
    std::uint64_t hbits = tbits;
    for (;;) {
      fill_unpack(hbits, lambda + 1, n, here);
      full_ev.run_here(here);
      if (full_ev.all_here_at0()) out.push_back(HTTrace{here, t});
      if (hbits == 0) break;
      hbits = (hbits - 1) & tbits;
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// t must already satisfy the theory on the there level (with run_there done
// on full_ev); true iff no proper sub-trace is a model with it.
bool minimal_below(Evaluator& full_ev, const Trace& t, int n) {
  std::uint64_t tbits = pack(t, n);
  if (tbits == 0) return true;
  Trace here;
  std::uint64_t hbits = (tbits - 1) & tbits;
  for (;;) {
    fill_unpack(hbits, static_cast<int>(t.states.size()), n, here);
    full_ev.run_here(here);
    if (full_ev.all_here_at0()) return false;
    if (hbits == 0) break;
    hbits = (hbits - 1) & tbits;
  }
  return true;
}

}  // namespace

bool is_equilibrium(const FormulaStore& store, const Theory& th, const Trace& t) {
  CompiledTheory ct(store, th.alphabet, th.formulas);
  Evaluator ev(ct);
  ev.run_there(t);
  ev.run_here(t);
  if (!ev.all_here_at0()) return false;
  return minimal_below(ev, t, static_cast<int>(th.alphabet.size()));
}

std::vector<Trace> tel_models(const FormulaStore& store, const Theory& th,
                              int lambda, Budget budget) {
  check_budget(th, lambda, budget, "stable-model enumeration");
  Scan scan(store, th, lambda);
  int n = static_cast<int>(th.alphabet.size());
  std::vector<Trace> out;
  Evaluator full_ev(*scan.full_ct_);
  scan.totals([&](const Trace& t) {
    full_ev.run_there(t);
    if (minimal_below(full_ev, t, n)) out.push_back(t);
  });
  std::sort(out.begin(), out.end());
  return out;
}

ModelSet tel_models_upto(const FormulaStore& store, const Theory& th,
                         int lambda_max, Budget budget) {
  ModelSet ms;
  for (int lambda = 0; lambda <= lambda_max; ++lambda)
    ms.by_length[lambda] = tel_models(store, th, lambda, budget);
  return ms;
}

namespace ref {

std::vector<HTTrace> tht_models(const FormulaStore& store, const Theory& th,
                                int lambda, Budget budget) {
  check_budget(th, lambda, budget, "HT-model enumeration");
  int n = static_cast<int>(th.alphabet.size());
  int n_states = lambda + 1;
  std::uint64_t limit = 1ull << (n_states * n);
  std::vector<HTTrace> out;
  for (std::uint64_t tbits = 0; tbits < limit; ++tbits) {
    Trace there = unpack(tbits, n_states, n);
    std::uint64_t hbits = tbits;
    for (;;) {
      Trace here = unpack(hbits, n_states, n);
      HTTrace m{here, there};
      bool ok = true;
      for (Fid f : th.formulas)
        if (!ref::sat(store, th.alphabet, m, 0, f)) { ok = false; break; }
      if (ok) out.push_back(m);
      if (hbits == 0) break;
      hbits = (hbits - 1) & tbits;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Trace> tel_models(const FormulaStore& store, const Theory& th,
                              int lambda, Budget budget) {
  check_budget(th, lambda, budget, "stable-model enumeration");
  int n = static_cast<int>(th.alphabet.size());
  int n_states = lambda + 1;
  std::uint64_t limit = 1ull << (n_states * n);
  std::vector<Trace> out;
  for (std::uint64_t tbits = 0; tbits < limit; ++tbits) {
    Trace there = unpack(tbits, n_states, n);
    auto model_at = [&](const Trace& here) {
      HTTrace m{here, there};
      for (Fid f : th.formulas)
        if (!ref::sat(store, th.alphabet, m, 0, f)) return false;
      return true;
    };
    if (!model_at(there)) continue;
    bool minimal = true;
    std::uint64_t hbits = tbits;
    for (;;) {
      if (hbits == 0) break;
      hbits = (hbits - 1) & tbits;
      if (model_at(unpack(hbits, n_states, n))) { minimal = false; break; }
      if (hbits == 0) break;
    }
    if (minimal) out.push_back(there);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ref

}  // namespace teltrace
