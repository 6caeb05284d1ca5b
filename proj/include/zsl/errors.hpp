#pragma once

#include <stdexcept>
#include <string>

namespace zsl {

/// Two operands live in different groups.
class SpecMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size, node or order budget was exceeded. Searches never
/// truncate silently; they throw this instead.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation produced a counterexample to a statement it was asked to
/// certify (for example a zero-sum-free sequence that the theorem excludes).
class TheoremViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zsl
