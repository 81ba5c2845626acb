#pragma once

#include <string_view>

#include "teltrace/formula.hpp"

namespace teltrace {

// Parses the surface language: `.`-terminated statements, `%` line comments,
// `#program initial|dynamic|final|always.` directives, rules `head :- body.`
// with `;`/`|` head disjuncts and `,` body conjuncts, bare formula statements,
// quote sugar ('p previous, p' next), `&initial`/`&final`, and `&tel { ... }`
// embedded formulas. Throws ParseError with 1-based line/column.
Theory parse_theory(FormulaStore& store, std::string_view text);

// Single formula, full grammar (used by tests and the evaluator CLI).
Fid parse_formula(FormulaStore& store, std::string_view text);

}  // namespace teltrace
