#include "gepr/closed_forms.hpp"

#include <cmath>
#include <string>

#include "gepr/errors.hpp"

namespace gepr {

namespace {

void require_gaussian(const StateSpec& spec, const char* what) {
  if (spec.family() != Family::GaussianEPR) {
    throw UnsupportedFormula(std::string(what) +
                             " has no closed form for the nongaussian family");
  }
}

}  // namespace

double gem_closed(const StateSpec& spec) noexcept {
  const double s = spec.sigma();
  const double o = spec.omega();
  const double s2 = s * s;
  const double o2 = o * o;
  if (spec.family() == Family::GaussianEPR) {
    return 2.0 * (s - o) * (s - o) / (s2 + o2);
  }
  const double t = s2 + o2;
  return 2.0 - s * o * (3.0 * o2 * o2 + 2.0 * o2 * s2 + 3.0 * s2 * s2) / (t * t * t);
}

double gem_closed(Family family, Ratio ratio) noexcept {
  const double r = ratio.value();
  const double r2 = r * r;
  if (family == Family::GaussianEPR) {
    return 2.0 * (r - 1.0) * (r - 1.0) / (r2 + 1.0);
  }
  const double t = r2 + 1.0;
  return 2.0 - r * (3.0 + 2.0 * r2 + 3.0 * r2 * r2) / (t * t * t);
}

double percent_entanglement(double e2) {
  if (!(e2 >= 0.0 && e2 <= 2.0)) {
    throw ParameterError("E^2 must lie in [0, 2], got " + std::to_string(e2));
  }
  return e2 * 50.0;
}

double purity_closed(const StateSpec& spec) noexcept {
  if (spec.family() == Family::GaussianEPR) {
    const double s = spec.sigma();
    const double o = spec.omega();
    return 2.0 * s * o / (s * s + o * o);
  }
  return 1.0 - 0.5 * gem_closed(spec);
}

double schmidt_number_closed(const StateSpec& spec) noexcept {
  return 1.0 / purity_closed(spec);
}

double schmidt_number_squared(const StateSpec& spec) {
  require_gaussian(spec, "squared Schmidt number");
  const double r = spec.sigma() / spec.omega();
  const double h = r + 1.0 / r;
  return 0.25 * h * h;
}

double ph_value_closed(const StateSpec& spec) {
  require_gaussian(spec, "second-order separability value");
  const double r = spec.sigma() / spec.omega();
  const double h = r - 1.0 / r;
  return -h * h / 16.0;
}

Widths widths_closed(const StateSpec& spec) {
  require_gaussian(spec, "marginal/conditional widths");
  const double s2 = spec.sigma() * spec.sigma();
  const double o2 = spec.omega() * spec.omega();
  return {std::sqrt(0.5 * (s2 + o2)), std::sqrt(2.0 * s2 * o2 / (s2 + o2))};
}

}  // namespace gepr
