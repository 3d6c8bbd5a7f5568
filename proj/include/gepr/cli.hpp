#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gepr/quadrature.hpp"
#include "gepr/spdc.hpp"
#include "gepr/state.hpp"

namespace gepr::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// Sweeps

enum class Quantity {
  GemGaussian,      ///< percent vs sigma/omega
  GemNonGaussian,   ///< percent vs omega/sigma
  GemBoth,          ///< both families vs omega/sigma with the annotation window
  SpdcVsPumpWidth,  ///< percent vs pump width at fixed sigma
  PhValue,          ///< second-order separability value vs omega/sigma
  SurfaceGem,       ///< percent over a (sigma, omega) grid
};

Quantity parse_quantity(std::string_view name);

enum class Spacing { Linear, Log };

struct Axis {
  double min;
  double max;
  int count;
  Spacing spacing;
};

/// Throws ParameterError unless count >= 2, min < max, and min > 0 for log.
std::vector<double> axis_points(const Axis& axis);

struct SweepRequest {
  Quantity quantity;
  Axis axis;
  Family family = Family::GaussianEPR;  ///< PhValue, SurfaceGem
  std::optional<Length> sigma;          ///< SpdcVsPumpWidth
  spdc::WidthConvention convention = spdc::WidthConvention::FullWidthOmega;
  ConvergenceOptions convergence{};
};

/// Lower/upper omega/sigma of the external higher-order window used only to
/// annotate GemBoth rows.
inline constexpr double kAnnotationWindowLower = 0.63;
inline constexpr double kAnnotationWindowUpper = 1.58;

/// CSV with a header row; numbers in %.9g; rows in axis order.
void write_sweep(const SweepRequest& request, std::ostream& out);

/// "%.9g"
std::string format_number(double value);

// ---------------------------------------------------------------------------
// Self verification

enum class Fault {
  None,
  NonGaussianNormalization,  ///< scales the nongaussian amplitude by 1.01
};

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<CheckResult> run_verification(Fault fault = Fault::None,
                                          ConvergenceOptions convergence = {});

}  // namespace gepr::cli
