#include "teltrace/verify.hpp"

#include <algorithm>
#include <random>

#include "teltrace/errors.hpp"
#include "teltrace/printer.hpp"
#include "teltrace/transform.hpp"

namespace teltrace {

VerifyRoutes::VerifyRoutes()
    : bounded([](const TemporalProgram& p, int lambda) { return tau_bounded(p, lambda); }) {}

namespace {

std::string show_trace(const FormulaStore& s, const Alphabet& al, const Trace& t) {
  std::string out;
  for (std::uint64_t st : t.states) out += print_state(s, al, st);
  return out;
}

std::string diff_sets(const FormulaStore& s, const Alphabet& al,
                      const std::vector<Trace>& oracle, const std::vector<Trace>& got) {
  for (const Trace& t : oracle)
    if (!std::binary_search(got.begin(), got.end(), t))
      return "missing stable model " + show_trace(s, al, t);
  for (const Trace& t : got)
    if (!std::binary_search(oracle.begin(), oracle.end(), t))
      return "spurious stable model " + show_trace(s, al, t);
  return "";
}

Trace random_trace(std::mt19937_64& rng, int n_states, int n_atoms) {
  Trace t;
  std::uint64_t mask = n_atoms >= 64 ? ~0ull : (1ull << n_atoms) - 1;
  for (int i = 0; i < n_states; ++i) t.states.push_back(rng() & mask);
  return t;
}

HTTrace random_ht(std::mt19937_64& rng, int n_states, int n_atoms) {
  Trace there = random_trace(rng, n_states, n_atoms);
  Trace here = there;
  for (auto& st : here.states) st &= rng();
  return HTTrace{here, there};
}

}  // namespace

std::vector<CheckResult> verify_theory(FormulaStore& store, const Theory& th,
                                       const VerifyOptions& opt,
                                       const VerifyRoutes& routes) {
  std::vector<CheckResult> out;
  TemporalProgram nf = to_normal_form(store, th);

  for (int lambda = 0; lambda <= opt.lambda_max; ++lambda) {
    std::vector<Trace> oracle = tel_models(store, th, lambda, opt.budget);
    CheckResult c{"bounded translation, length " + std::to_string(lambda), true, ""};
    LogicProgram ground = routes.bounded(nf, lambda);
    std::vector<Trace> got;
    for (std::uint64_t m : stable_models(ground, opt.budget))
      got.push_back(decode_model(ground, th.alphabet, m, lambda));
    std::sort(got.begin(), got.end());
    got.erase(std::unique(got.begin(), got.end()), got.end());
    std::string diff = diff_sets(store, th.alphabet, oracle, got);
    if (!diff.empty()) {
      c.pass = false;
      c.detail = diff + " (oracle vs bounded route)";
    }
    out.push_back(c);
  }

  bool pc_ok = true;
  TemporalProgram pc;
  try {
    pc = reduce_theory(store, th);
  } catch (const InputError& e) {
    pc_ok = false;
    out.push_back({"point-wise translation", true,
                   std::string("skipped: ") + e.what()});
  }
  if (pc_ok) {
    AtomId q = store.atom("__q");
    for (int lambda = 0; lambda <= opt.lambda_max; ++lambda) {
      CheckResult c{"point-wise translation, length " + std::to_string(lambda), true, ""};
      std::vector<Trace> oracle = tel_models(store, th, lambda, opt.budget);
      auto reports = incremental_solve(store, pc, lambda, lambda,
                                       SolveMode::Exhaustive, opt.budget);
      std::vector<Trace> got;
      bool q_ok = true;
      for (const auto& rep : reports) {
        for (std::size_t mi = 0; mi < rep.models.size(); ++mi) {
          got.push_back(rep.trace_models[mi]);
          // the q-prefix must be exactly q_1..q_lambda
          for (int i = 0; i <= lambda + 1; ++i) {
            int idx = rep.program.find(GAtom{q, i});
            bool present = idx >= 0 && (rep.models[mi] >> idx & 1);
            bool expected = i >= 1 && i <= lambda;
            if (present != expected) q_ok = false;
          }
        }
      }
      std::sort(got.begin(), got.end());
      got.erase(std::unique(got.begin(), got.end()), got.end());
      std::string diff = diff_sets(store, th.alphabet, oracle, got);
      if (!diff.empty()) {
        c.pass = false;
        c.detail = diff + " (oracle vs point-wise route)";
      } else if (!q_ok) {
        c.pass = false;
        c.detail = "q-atom prefix differs from q_1..q_" + std::to_string(lambda);
      }
      out.push_back(c);
    }
  }

  // randomized semantic samples on the instance formulas
  std::mt19937_64 rng(opt.seed);
  int n = static_cast<int>(th.alphabet.size());
  CompiledTheory ct(store, th.alphabet, th.formulas);
  Evaluator ev(ct);
  CheckResult pers{"persistence sample", true, ""};
  CheckResult coll{"total-collapse sample", true, ""};
  for (int i = 0; i < opt.samples; ++i) {
    int n_states = 1 + static_cast<int>(rng() % 4);
    std::uint64_t full = (1ull << n_states) - 1;
    HTTrace m = random_ht(rng, n_states, n);
    ev.run_there(m.there);
    std::vector<std::uint64_t> there_masks;
    for (std::size_t fi = 0; fi < th.formulas.size(); ++fi)
      there_masks.push_back(ev.there_mask(ct.root(fi)) & full);
    ev.run_here(m.here);
    for (std::size_t fi = 0; fi < th.formulas.size(); ++fi) {
      std::uint64_t hm = ev.here_mask(ct.root(fi)) & full;
      if (hm & ~there_masks[fi]) {
        pers.pass = false;
        pers.detail = "satisfaction not persistent for " +
                      print_formula(store, th.formulas[fi]) + " on " +
                      show_trace(store, th.alphabet, m.here) + " / " +
                      show_trace(store, th.alphabet, m.there);
      }
    }
    ev.run_here(m.there);  // total evaluation
    for (std::size_t fi = 0; fi < th.formulas.size(); ++fi) {
      if ((ev.here_mask(ct.root(fi)) & full) != there_masks[fi]) {
        coll.pass = false;
        coll.detail = "total trace disagrees with the classical pass for " +
                      print_formula(store, th.formulas[fi]) + " on " +
                      show_trace(store, th.alphabet, m.there);
      }
    }
  }
  out.push_back(pers);
  out.push_back(coll);

  CheckResult dual{"temporal-duality sample", true, ""};
  CheckResult desq{"desugaring sample", true, ""};
  for (std::size_t fi = 0; fi < th.formulas.size(); ++fi) {
    Fid f = th.formulas[fi];
    Fid swapped = swap_time(store, f);
    Fid core = desugar(store, f);
    for (int i = 0; i < opt.samples / 4 + 1; ++i) {
      int n_states = 1 + static_cast<int>(rng() % 3);
      HTTrace m = random_ht(rng, n_states, n);
      HTTrace r = reverse(m);
      for (int k = 0; k < n_states; ++k) {
        bool a = sat(store, th.alphabet, m, k, f);
        if (a != sat(store, th.alphabet, r, n_states - 1 - k, swapped)) {
          dual.pass = false;
          dual.detail = "mirror evaluation differs for " + print_formula(store, f) +
                        " at " + std::to_string(k) + " on " +
                        show_trace(store, th.alphabet, m.there);
        }
        if (a != sat(store, th.alphabet, m, k, core)) {
          desq.pass = false;
          desq.detail = "core expansion differs for " + print_formula(store, f) +
                        " at " + std::to_string(k) + " on " +
                        show_trace(store, th.alphabet, m.there);
        }
      }
    }
  }
  out.push_back(dual);
  out.push_back(desq);
  return out;
}

}  // namespace teltrace
