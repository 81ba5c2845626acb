#pragma once

#include <map>
#include <vector>

#include "teltrace/budget.hpp"
#include "teltrace/eval.hpp"

namespace teltrace {

// Temporal stable models of a theory, partitioned by trace length.
struct ModelSet {
  std::map<int, std::vector<Trace>> by_length;
};

// All HT-models of the given length: every pair <H,T> with H <= T that
// satisfies the theory at time 0. Sorted by (there, here).
std::vector<HTTrace> tht_models(const FormulaStore& store, const Theory& th,
                                int lambda, Budget budget = Budget::from_env());

// Is t (read as the total trace <T,T>) in equilibrium: a model with no
// strictly smaller here-trace that is also a model.
bool is_equilibrium(const FormulaStore& store, const Theory& th, const Trace& t);

// Temporal stable models of the given length, sorted.
std::vector<Trace> tel_models(const FormulaStore& store, const Theory& th,
                              int lambda, Budget budget = Budget::from_env());

ModelSet tel_models_upto(const FormulaStore& store, const Theory& th,
                         int lambda_max, Budget budget = Budget::from_env());

namespace ref {

// Serial reference enumerators: scan every <H,T> pair with the reference
// evaluator, no pruning and no per-state tables. Used to validate the fast
// kernel on small instances and by the benchmark.
std::vector<HTTrace> tht_models(const FormulaStore& store, const Theory& th,
                                int lambda, Budget budget = Budget::from_env());
std::vector<Trace> tel_models(const FormulaStore& store, const Theory& th,
                              int lambda, Budget budget = Budget::from_env());

}  // namespace ref

}  // namespace teltrace
