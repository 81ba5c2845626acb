#include "teltrace/equivalence.hpp"

namespace teltrace {

namespace {

EquivResult check(const FormulaStore& store, Fid phi, Fid psi, int lambda_max,
                  const Alphabet& alphabet, Budget budget, bool all_k) {
  int n = static_cast<int>(alphabet.size());
  budget.require(static_cast<long long>(lambda_max + 1) * n, "equivalence check");
  CompiledTheory ct(store, alphabet, {phi, psi});
  Evaluator ev(ct);
  for (int lambda = 0; lambda <= lambda_max; ++lambda) {
    int n_states = lambda + 1;
    int bits = n_states * n;
    std::uint64_t limit = 1ull << bits;
    for (std::uint64_t tbits = 0; tbits < limit; ++tbits) {
      Trace there = unpack(tbits, n_states, n);
      ev.run_there(there);
      // All H <= T, including H = T.
      std::uint64_t hbits = tbits;
      for (;;) {
        Trace here = unpack(hbits, n_states, n);
        ev.run_here(here);
        std::uint64_t a = ev.here_mask(ct.root(0));
        std::uint64_t b = ev.here_mask(ct.root(1));
        std::uint64_t diff = all_k ? (a ^ b) : ((a ^ b) & 1);
        if (diff) {
          int k = 0;
          while (!(diff >> k & 1)) ++k;
          return EquivResult{false, EquivWitness{HTTrace{here, there}, k}};
        }
        if (hbits == 0) break;
        hbits = (hbits - 1) & tbits;
      }
    }
  }
  return EquivResult{};
}

}  // namespace

EquivResult equivalent_bounded(const FormulaStore& store, Fid phi, Fid psi,
                               int lambda_max, const Alphabet& alphabet,
                               Budget budget) {
  return check(store, phi, psi, lambda_max, alphabet, budget, true);
}

EquivResult initially_equivalent_bounded(const FormulaStore& store, Fid phi, Fid psi,
                                         int lambda_max, const Alphabet& alphabet,
                                         Budget budget) {
  return check(store, phi, psi, lambda_max, alphabet, budget, false);
}

}  // namespace teltrace
