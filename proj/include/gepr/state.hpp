#pragma once

#include <string>
#include <string_view>
#include <utility>

namespace gepr {

enum class Family { GaussianEPR, NonGaussian };

std::string_view to_string(Family family) noexcept;
/// Accepts "gaussian"/"gaussian-epr" and "nongaussian"/"non-gaussian".
Family parse_family(std::string_view name);

/// Dimensionless width ratio sigma/omega.
class Ratio {
 public:
  explicit Ratio(double value);
  double value() const noexcept { return value_; }
  Ratio inverse() const { return Ratio(1.0 / value_); }

 private:
  double value_;
};

/// A bipartite two-particle state family with its correlation width sigma
/// and anti-correlation width omega. Lengths are in meters, or unitless in
/// dimensionless mode; every formula here only depends on their ratio up to
/// an overall length scale.
class StateSpec {
 public:
  /// Throws ParameterError unless sigma and omega are finite and > 0.
  StateSpec(Family family, double sigma, double omega);

  Family family() const noexcept { return family_; }
  double sigma() const noexcept { return sigma_; }
  double omega() const noexcept { return omega_; }
  Ratio ratio() const { return Ratio(sigma_ / omega_); }

  /// Same family with both widths multiplied by `factor`.
  StateSpec scaled(double factor) const;
  /// Same family with sigma and omega exchanged.
  StateSpec swapped() const { return StateSpec(family_, omega_, sigma_); }

 private:
  Family family_;
  double sigma_;
  double omega_;
};

/// Gaussian envelope shared by both families:
///   exp(-diag * (x1^2 + x2^2) + 2 * coupling * x1 * x2)
/// with diag = (1/sigma^2 + 1/omega^2)/4 and coupling = (1/sigma^2 - 1/omega^2)/4.
/// The numerical oracles use it to place quadrature nodes.
struct GaussianEnvelope {
  double diag;
  double coupling;
};

GaussianEnvelope envelope(const StateSpec& spec) noexcept;

/// Normalized real wavefunction psi(x1, x2).
double amplitude(const StateSpec& spec, double x1, double x2) noexcept;

/// Analytic (d psi/d x1, d psi/d x2).
std::pair<double, double> amplitude_gradient(const StateSpec& spec, double x1,
                                             double x2) noexcept;

}  // namespace gepr
