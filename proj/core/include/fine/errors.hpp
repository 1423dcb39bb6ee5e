#pragma once

#include <stdexcept>
#include <string>

namespace fine {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A probability table violates its invariants (normalization, negativity, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

// User-supplied tables are mutually inconsistent (single-spin marginals disagree).
class ConsistencyError : public Error {
public:
  using Error::Error;
};

// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
  using Error::Error;
};

// The requested construction has no solution; carries the violation amount.
class InfeasibleError : public Error {
public:
  InfeasibleError(const std::string& what, double violation)
      : Error(what), violation_(violation) {}
  double violation() const { return violation_; }

private:
  double violation_ = 0.0;
};

// The input is valid but this method does not handle it (e.g. nonzero
// average spins in the algebraic four-variable construction).
class UnsupportedError : public Error {
public:
  using Error::Error;
};

// A numeric procedure failed to reach its tolerance.
class NumericError : public Error {
public:
  using Error::Error;
};

}  // namespace fine
