#include "gepr/state.hpp"

#include <cmath>
#include <numbers>

#include "gepr/errors.hpp"

namespace gepr {

namespace {

void require_width(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ParameterError(std::string(name) + " must be finite and > 0, got " +
                         std::to_string(value));
  }
}

double normalization(const StateSpec& spec) noexcept {
  const double s = spec.sigma();
  const double o = spec.omega();
  if (spec.family() == Family::GaussianEPR) {
    return 1.0 / std::sqrt(std::numbers::pi * s * o);
  }
  return 1.0 / std::sqrt(std::numbers::pi * s * o * o * o);
}

double gaussian_part(const StateSpec& spec, double x1, double x2) noexcept {
  const double d = x1 - x2;
  const double p = x1 + x2;
  const double s = spec.sigma();
  const double o = spec.omega();
  return std::exp(-d * d / (4.0 * s * s) - p * p / (4.0 * o * o));
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  return family == Family::GaussianEPR ? "gaussian" : "nongaussian";
}

Family parse_family(std::string_view name) {
  if (name == "gaussian" || name == "gaussian-epr") return Family::GaussianEPR;
  if (name == "nongaussian" || name == "non-gaussian") return Family::NonGaussian;
  throw ParameterError("unknown state family '" + std::string(name) + "'");
}

Ratio::Ratio(double value) : value_(value) { require_width(value, "ratio"); }

StateSpec::StateSpec(Family family, double sigma, double omega)
    : family_(family), sigma_(sigma), omega_(omega) {
  require_width(sigma, "sigma");
  require_width(omega, "omega");
}

StateSpec StateSpec::scaled(double factor) const {
  return StateSpec(family_, sigma_ * factor, omega_ * factor);
}

GaussianEnvelope envelope(const StateSpec& spec) noexcept {
  const double is2 = 1.0 / (spec.sigma() * spec.sigma());
  const double io2 = 1.0 / (spec.omega() * spec.omega());
  return {0.25 * (is2 + io2), 0.25 * (is2 - io2)};
}

double amplitude(const StateSpec& spec, double x1, double x2) noexcept {
  const double g = normalization(spec) * gaussian_part(spec, x1, x2);
  return spec.family() == Family::GaussianEPR ? g : (x1 + x2) * g;
}

std::pair<double, double> amplitude_gradient(const StateSpec& spec, double x1,
                                             double x2) noexcept {
  const double s2 = spec.sigma() * spec.sigma();
  const double o2 = spec.omega() * spec.omega();
  const double d = x1 - x2;
  const double p = x1 + x2;
  const double g = normalization(spec) * gaussian_part(spec, x1, x2);
  // log-derivatives of the Gaussian factor
  const double l1 = -d / (2.0 * s2) - p / (2.0 * o2);
  const double l2 = d / (2.0 * s2) - p / (2.0 * o2);
  if (spec.family() == Family::GaussianEPR) {
    return {g * l1, g * l2};
  }
  return {g * (1.0 + p * l1), g * (1.0 + p * l2)};
}

}  // namespace gepr
