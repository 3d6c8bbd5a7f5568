#pragma once

#include "gepr/state.hpp"

namespace gepr {

/// Generalized entanglement measure E^2 in [0, 2].
///   GaussianEPR: 2 (s - o)^2 / (s^2 + o^2)
///   NonGaussian: 2 - s o (3 o^4 + 2 o^2 s^2 + 3 s^4) / (s^2 + o^2)^3
double gem_closed(const StateSpec& spec) noexcept;
/// Same quantity written in r = sigma/omega only.
double gem_closed(Family family, Ratio r) noexcept;

/// E^2 * 50. Throws ParameterError outside [0, 2].
double percent_entanglement(double e2);

/// Reduced-state purity Tr(rho_1^2) = 1 - E^2/2.
double purity_closed(const StateSpec& spec) noexcept;

/// Effective number of Schmidt modes 1/purity of the one-dimensional state.
double schmidt_number_closed(const StateSpec& spec) noexcept;

/// K = (s/o + o/s)^2 / 4, the square of schmidt_number_closed. GaussianEPR only;
/// throws UnsupportedFormula otherwise.
double schmidt_number_squared(const StateSpec& spec);

/// Second-order separability value -(s/o - o/s)^2 / 16 (hbar = 1). GaussianEPR only.
double ph_value_closed(const StateSpec& spec);

struct Widths {
  double marginal;     ///< sqrt((s^2 + o^2)/2)
  double conditional;  ///< sqrt(2 s^2 o^2 / (s^2 + o^2))
  double ratio() const noexcept { return conditional / marginal; }
};

/// Marginal and conditional widths of the joint position distribution. GaussianEPR only.
Widths widths_closed(const StateSpec& spec);

}  // namespace gepr
