#pragma once

#include <stdexcept>
#include <string>

namespace aitest {

// Argument outside the mathematical domain of an operation (p <= 0, alpha
// outside (0,1), negative two-sided threshold, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Mismatched lengths or otherwise malformed array-shaped input.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A critical-value mode requested for a configuration it does not cover.
class UnsupportedModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller violated a documented precondition (e.g. v(X) > r).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid user input: bad unit names, table rows, CLI flags.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace aitest
