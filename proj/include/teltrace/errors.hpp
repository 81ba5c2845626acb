#pragma once

#include <stdexcept>
#include <string>

namespace teltrace {

// Lexical or grammatical problem in an input file. Positions are 1-based.
struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(std::string msg, int line_, int col_)
      : std::runtime_error(std::move(msg)), line(line_), col(col_) {}
};

// An enumeration would exceed the configured budget. Raised before any work
// starts; never a silent truncation.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition of an operation does not hold (caller error).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed; indicates a bug, not bad input.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace teltrace
