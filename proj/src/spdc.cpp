#include "gepr/spdc.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gepr/closed_forms.hpp"
#include "gepr/errors.hpp"
#include "gepr/oracle.hpp"
#include "gepr/root_finding.hpp"

namespace gepr::spdc {

using std::numbers::pi;

namespace {

void require_length(Length l, const char* name) {
  if (!std::isfinite(l.meters) || l.meters <= 0.0) {
    throw ParameterError(std::string(name) + " must be finite and > 0");
  }
}

}  // namespace

std::string_view to_string(WidthConvention convention) noexcept {
  return convention == WidthConvention::FullWidthOmega ? "omega" : "sigma-p";
}

WidthConvention parse_width_convention(std::string_view name) {
  if (name == "omega") return WidthConvention::FullWidthOmega;
  if (name == "sigma-p" || name == "sigma_p") return WidthConvention::WaistSigmaP;
  throw ParameterError("width convention must be 'omega' or 'sigma-p', got '" +
                       std::string(name) + "'");
}

SpdcSetup::SpdcSetup(Length crystal_length, Length pump_wavelength, Length pump_width,
                     WidthConvention convention)
    : crystal_length_(crystal_length),
      pump_wavelength_(pump_wavelength),
      pump_width_(pump_width),
      convention_(convention) {
  require_length(crystal_length, "crystal length");
  require_length(pump_wavelength, "pump wavelength");
  require_length(pump_width, "pump width");
}

Length SpdcSetup::sigma() const noexcept {
  return correlation_width(crystal_length_, pump_wavelength_);
}

Length SpdcSetup::omega() const noexcept {
  return convention_ == WidthConvention::FullWidthOmega ? pump_width_
                                                        : Length{2.0 * pump_width_.meters};
}

Length SpdcSetup::sigma_p() const noexcept { return Length{0.5 * omega().meters}; }

Length correlation_width(Length crystal_length, Length pump_wavelength) {
  return Length{std::sqrt(crystal_length.meters * pump_wavelength.meters / (6.0 * pi))};
}

StateSpec map_to_state(const SpdcSetup& setup) {
  return StateSpec(Family::GaussianEPR, setup.sigma().meters, setup.omega().meters);
}

double biphoton_e2(const SpdcSetup& setup) noexcept {
  const double sp = setup.sigma_p().meters;
  const double x =
      setup.crystal_length().meters * setup.pump_wavelength().meters / (24.0 * pi * sp * sp);
  const double root = std::sqrt(x) - 1.0;
  return 2.0 * root * root / (x + 1.0);
}

EntanglementReport biphoton_gem(const SpdcSetup& setup, const ReportOptions& options) {
  auto report = build_report(map_to_state(setup), options);
  const double e2 = biphoton_e2(setup);
  report.e2 = {e2, kClosedForm};
  report.percent = {percent_entanglement(e2), kClosedForm};
  return report;
}

Branch parse_branch(std::string_view name) {
  if (name == "omega-gt-sigma" || name == "above") return Branch::OmegaAboveSigma;
  if (name == "omega-lt-sigma" || name == "below") return Branch::OmegaBelowSigma;
  throw ParameterError("branch must be 'omega-gt-sigma' or 'omega-lt-sigma', got '" +
                       std::string(name) + "'");
}

PumpWidthSolution required_pump_width(Length crystal_length, Length pump_wavelength,
                                      double target_e2, Branch branch) {
  require_length(crystal_length, "crystal length");
  require_length(pump_wavelength, "pump wavelength");
  if (!(target_e2 >= 0.0)) {
    throw ParameterError("target E^2 must be >= 0");
  }
  if (!(target_e2 < 2.0)) {
    throw ParameterError("target E^2 must be < 2: maximal entanglement needs an infinite "
                         "or vanishing pump width");
  }
  const double sigma = correlation_width(crystal_length, pump_wavelength).meters;
  auto solution = [&](double omega) {
    return PumpWidthSolution{Length{omega}, Length{0.5 * omega}};
  };
  if (target_e2 == 0.0) return solution(sigma);

  // E^2 as a function of t = |log(omega / sigma)|, increasing from 0.
  auto excess = [&](double t) {
    return gem_closed(Family::GaussianEPR, Ratio(std::exp(-t))) - target_e2;
  };
  double upper = 1.0;
  while (excess(upper) <= 0.0) {
    upper *= 2.0;
    if (upper > 600.0) throw ParameterError("target E^2 too close to 2");
  }
  const double t = bisect(excess, 0.0, upper, BisectOptions{1e-11, 0.0, 400});
  const double omega = branch == Branch::OmegaAboveSigma ? sigma * std::exp(t)
                                                         : sigma * std::exp(-t);
  return solution(omega);
}

Inference infer_gem_from_measurement(const MeasuredWidths& widths) {
  require_length(widths.f, "f");
  require_length(widths.sigma1, "sigma1");
  const double e2 = 2.0 * (1.0 - widths.f.meters / widths.sigma1.meters);
  if (e2 < 0.0) return {0.0, true};
  return {e2, false};
}

UncertaintyReport uncertainty_report(const StateSpec& spec, ConvergenceOptions options) {
  if (spec.family() != Family::GaussianEPR) {
    throw UnsupportedFormula("uncertainty report is defined for the gaussian family only");
  }
  const double s2 = spec.sigma() * spec.sigma();
  const double o2 = spec.omega() * spec.omega();
  const double dx = std::sqrt(o2 + s2);
  const double dk = 0.25 * std::sqrt(1.0 / s2 + 1.0 / o2);

  const auto m = moments(spec, options);
  UncertaintyReport report;
  report.closed_form = {{dx, dx}, {dk, dk}};
  report.second_moment = {{std::sqrt(m.value.var_x[0]), std::sqrt(m.value.var_x[1])},
                          {std::sqrt(m.value.var_p[0]), std::sqrt(m.value.var_p[1])}};
  report.order_used = m.order_used;
  return report;
}

double momentum_amplitude(const SpdcSetup& setup, double q1, double q2) noexcept {
  const double d = q1 - q2;
  const double s = q1 + q2;
  const double theta =
      setup.crystal_length().meters * setup.pump_wavelength().meters * d * d / (8.0 * pi);
  const double sinc = theta == 0.0 ? 1.0 : std::sin(theta) / theta;
  const double sp = setup.sigma_p().meters;
  return sinc * std::exp(-sp * sp * s * s);
}

}  // namespace gepr::spdc
