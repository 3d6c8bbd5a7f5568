#pragma once

#include <stdexcept>
#include <string>

namespace gepr {

/// Invalid physical or numerical parameter supplied by a caller.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed form was requested for a state family that has none.
class UnsupportedFormula : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Generic numerical failure (non-finite integrand, vanishing normalizer, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Order doubling hit the cap before successive values agreed.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double previous, double last, int order)
      : NumericalError(what), previous_(previous), last_(last), order_(order) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }
  int order() const noexcept { return order_; }

 private:
  double previous_;
  double last_;
  int order_;
};

/// Bisection bracket does not contain a sign change.
class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace gepr
