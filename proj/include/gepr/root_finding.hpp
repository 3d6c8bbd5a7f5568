#pragma once

#include <cmath>
#include <string>

#include "gepr/errors.hpp"

namespace gepr {

struct BisectOptions {
  double abs_tolerance = 1e-12;
  double rel_tolerance = 0.0;
  int max_iterations = 400;
};

/// Root of a continuous f on [lower, upper] (lower < upper) by bisection. f(lower) and
/// f(upper) must have opposite signs (or one of them be zero); otherwise
/// BracketError. Stops when the bracket is narrower than
/// abs_tolerance + rel_tolerance * |midpoint|, or at one ULP.
template <class F>
double bisect(F&& f, double lower, double upper, BisectOptions options = {}) {
  if (!(lower < upper)) throw ParameterError("bisection needs lower < upper");
  double f_lower = f(lower);
  double f_upper = f(upper);
  if (f_lower == 0.0) return lower;
  if (f_upper == 0.0) return upper;
  if ((f_lower > 0.0) == (f_upper > 0.0)) {
    throw BracketError("no sign change on [" + std::to_string(lower) + ", " +
                       std::to_string(upper) + "]: f = " + std::to_string(f_lower) + ", " +
                       std::to_string(f_upper));
  }
  for (int i = 0; i < options.max_iterations; ++i) {
    const double middle = 0.5 * (lower + upper);
    if (middle == lower || middle == upper) return middle;
    if (upper - lower <= options.abs_tolerance + options.rel_tolerance * std::abs(middle)) {
      return middle;
    }
    const double f_middle = f(middle);
    if (f_middle == 0.0) return middle;
    if ((f_middle > 0.0) == (f_upper > 0.0)) {
      upper = middle;
      f_upper = f_middle;
    } else {
      lower = middle;
      f_lower = f_middle;
    }
  }
  return 0.5 * (lower + upper);
}

}  // namespace gepr
