#pragma once

#include <array>
#include <string_view>

#include "gepr/quadrature.hpp"
#include "gepr/report.hpp"
#include "gepr/state.hpp"
#include "gepr/units.hpp"

namespace gepr::spdc {

/// How a quoted pump width is to be read: as the full width omega, or as the
/// beam waist sigma_p with omega = 2 sigma_p. Never inferred.
enum class WidthConvention { FullWidthOmega, WaistSigmaP };

std::string_view to_string(WidthConvention convention) noexcept;
/// "omega" or "sigma-p".
WidthConvention parse_width_convention(std::string_view name);

/// Degenerate collinear SPDC source, transverse x only.
class SpdcSetup {
 public:
  /// Throws ParameterError unless every length is finite and > 0.
  SpdcSetup(Length crystal_length, Length pump_wavelength, Length pump_width,
            WidthConvention convention = WidthConvention::FullWidthOmega);

  Length crystal_length() const noexcept { return crystal_length_; }
  Length pump_wavelength() const noexcept { return pump_wavelength_; }
  Length pump_width() const noexcept { return pump_width_; }
  WidthConvention convention() const noexcept { return convention_; }

  /// sqrt(L lambda_p / 6 pi)
  Length sigma() const noexcept;
  Length omega() const noexcept;
  Length sigma_p() const noexcept;

 private:
  Length crystal_length_;
  Length pump_wavelength_;
  Length pump_width_;
  WidthConvention convention_;
};

/// sqrt(L lambda_p / 6 pi).
Length correlation_width(Length crystal_length, Length pump_wavelength);

/// Generalized-EPR parameters (meters) of the biphoton.
StateSpec map_to_state(const SpdcSetup& setup);

/// E^2 = 2 (sqrt(X) - 1)^2 / (X + 1) with X = L lambda_p / (24 pi sigma_p^2).
double biphoton_e2(const SpdcSetup& setup) noexcept;

/// Full report for the mapped state with E^2 from biphoton_e2.
EntanglementReport biphoton_gem(const SpdcSetup& setup, const ReportOptions& options = {});

enum class Branch { OmegaAboveSigma, OmegaBelowSigma };
Branch parse_branch(std::string_view name);

struct PumpWidthSolution {
  Length omega;
  Length sigma_p;
};

/// Pump width giving E^2 = target on the requested branch, by bisection on
/// log(omega/sigma) to 1e-9 relative. Throws ParameterError unless
/// 0 <= target < 2.
PumpWidthSolution required_pump_width(Length crystal_length, Length pump_wavelength,
                                      double target_e2, Branch branch);

/// Widths read off an experiment: f from the anti-diagonal of the one-photon
/// cross-spectral density, sigma1 the down-converted beam width.
struct MeasuredWidths {
  Length f;
  Length sigma1;
};

struct Inference {
  double e2;
  bool clamped;  ///< f > sigma1, E^2 forced to 0
};

/// E^2 = 2 (1 - f / sigma1). Throws ParameterError for nonpositive widths.
Inference infer_gem_from_measurement(const MeasuredWidths& widths);

/// Position and wave-number spreads of the Gaussian state in two conventions.
struct Spreads {
  std::array<double, 2> dx;
  std::array<double, 2> dk;
  double product() const noexcept { return dx[0] * dk[0]; }
};

struct UncertaintyReport {
  Spreads closed_form;    ///< sqrt(o^2 + s^2) and (1/4) sqrt(1/s^2 + 1/o^2)
  Spreads second_moment;  ///< standard deviations from |psi|^2 by quadrature
  int order_used;
};

/// GaussianEPR only; throws UnsupportedFormula otherwise.
UncertaintyReport uncertainty_report(const StateSpec& spec, ConvergenceOptions options = {});

/// Unnormalized momentum-space biphoton amplitude along one transverse axis:
/// sinc(L lambda_p (q1 - q2)^2 / 8 pi) exp(-sigma_p^2 (q1 + q2)^2), with
/// sinc(0) = 1. For plotting; no entanglement figure depends on it.
double momentum_amplitude(const SpdcSetup& setup, double q1, double q2) noexcept;

}  // namespace gepr::spdc
