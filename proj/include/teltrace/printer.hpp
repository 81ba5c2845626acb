#pragma once

#include <string>

#include "teltrace/formula.hpp"

namespace teltrace {

// Canonical ASCII rendering; parse_formula(print_formula(f)) reproduces f
// node for node. Temporal prefix applications are parenthesized when they
// stand as operands of a binary connective.
std::string print_formula(const FormulaStore& store, Fid f);

}  // namespace teltrace
