#pragma once

#include <cstdint>
#include <vector>

#include "teltrace/formula.hpp"
#include "teltrace/trace.hpp"

namespace teltrace {

// Formulas compiled to a flat node table; evaluation fills one time-bitmask
// per node (bit k = satisfied at time point k), so all time points of a
// trace are computed in one pass and the table doubles as the memo keyed by
// (node, time point, here/there level).
class CompiledTheory {
 public:
  CompiledTheory(const FormulaStore& store, const Alphabet& alphabet,
                 const std::vector<Fid>& formulas);

  int root(std::size_t formula_idx) const { return roots_[formula_idx]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t formula_count() const { return roots_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }

 private:
  friend class Evaluator;
  struct ENode {
    Op op;
    int atom_bit;  // alphabet index for Atom nodes
    int lhs;
    int rhs;
  };
  int compile(const FormulaStore& store, Fid f);

  Alphabet alphabet_;
  std::vector<ENode> nodes_;        // children precede parents
  std::vector<int> roots_;
  std::unordered_map<Fid, int> index_;
};

// Reusable evaluation buffers; one instance per thread. Supports traces of
// length up to 62.
class Evaluator {
 public:
  explicit Evaluator(const CompiledTheory& ct);

  // Classical pass over the there-trace; must run before the here pass.
  void run_there(const Trace& there);
  // Intuitionistic pass over the here-trace (uses the current there masks).
  void run_here(const Trace& here);

  bool there_at(int root, int k) const { return there_[root] >> k & 1; }
  bool here_at(int root, int k) const { return here_[root] >> k & 1; }
  std::uint64_t there_mask(int root) const { return there_[root]; }
  std::uint64_t here_mask(int root) const { return here_[root]; }

  // All formulas of the theory satisfied at time 0 on the here level
  // (run_there + run_here must have been called).
  bool all_here_at0() const;
  // Same on the there level only.
  bool all_there_at0() const;

 private:
  const CompiledTheory& ct_;
  int len_ = 0;
  std::uint64_t full_ = 0;
  std::vector<std::uint64_t> there_;
  std::vector<std::uint64_t> here_;
};

// The satisfaction relation. k must lie in 0..length; every atom of f must
// belong to the alphabet.
bool sat(const FormulaStore& store, const Alphabet& alphabet, const HTTrace& m,
         int k, Fid f);

// Classical evaluation on a plain trace (the total collapse).
bool sat_ltl(const FormulaStore& store, const Alphabet& alphabet, const Trace& t,
             int k, Fid f);

// All formulas satisfied at time 0.
bool is_model(const FormulaStore& store, const Theory& th, const HTTrace& m);
bool is_model_ltl(const FormulaStore& store, const Theory& th, const Trace& t);

namespace ref {

// Serial reference evaluator: a literal transcription of the satisfaction
// clauses with explicit quantifier loops, no memoization, no bit tricks.
// Kept as the independent oracle for the fast evaluator.
bool sat(const FormulaStore& store, const Alphabet& alphabet, const HTTrace& m,
         int k, Fid f);
bool sat_ltl(const FormulaStore& store, const Alphabet& alphabet, const Trace& t,
             int k, Fid f);

}  // namespace ref

}  // namespace teltrace
