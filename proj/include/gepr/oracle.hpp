#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "gepr/linalg.hpp"
#include "gepr/quadrature.hpp"
#include "gepr/state.hpp"

namespace gepr {

/// "quadrature(order=N)"
std::string quadrature_label(int order);
/// "svd(modes=N)"
std::string svd_label(int modes);

// ---------------------------------------------------------------------------
// Reduced kernel rho_1(y, y') = \int psi(y, x) psi(y', x) dx

/// Kernel value at one point with an order-`order` Hermite rule placed on
/// the Gaussian envelope of the integrand in x.
double reduced_kernel_value(const StateSpec& spec, double y, double y_prime, int order);

/// Kernel sampled on a tensor grid of Hermite nodes for the retained variable.
struct ReducedKernel {
  std::vector<double> nodes;
  std::vector<double> weights;  // full weights for \int dy
  linalg::Matrix values;        // values(i, j) = rho_1(nodes[i], nodes[j])

  double trace() const;
  double max_asymmetry() const;
  /// Smallest eigenvalue of sqrt(w_i) rho_ij sqrt(w_j).
  double min_weighted_eigenvalue() const;
  /// sum_ij w_i w_j rho_ij^2
  double purity() const;
};

ReducedKernel reduced_kernel(const StateSpec& spec, int order);

/// Tr(rho_1^2) as a triple quadrature in rotated coordinates
/// s = (y + y')/sqrt2, d = (y - y')/sqrt2, at fixed order.
double purity_quadrature(const StateSpec& spec, int order);

/// E^2 = 2 (1 - purity) from converged quadrature. `delta` is the change of
/// E^2 over the last doubling.
Converged gem_numeric(const StateSpec& spec, ConvergenceOptions options = {});

// ---------------------------------------------------------------------------
// Schmidt spectrum

struct SchmidtSpectrum {
  std::vector<double> coefficients;  ///< descending, sum of squares 1
  double truncation_error;           ///< |1 - discretized norm|
  int modes;

  double purity() const;          ///< sum c^4
  double schmidt_number() const;  ///< 1 / sum c^4
};

/// Length scale lambda of the Hermite functions that diagonalize the
/// Gaussian envelope (Mehler kernel); the SVD grid is placed on it.
double schmidt_mode_scale(const StateSpec& spec);

/// Grid size large enough to hold the geometric spectrum down to ~1e-8.
int recommended_modes(const StateSpec& spec);

/// Singular values of M_ij = psi(a_i, a_j) sqrt(w_i w_j) on a `modes`-point
/// Hermite grid. Throws ParameterError for modes < 8.
SchmidtSpectrum schmidt_spectrum(const StateSpec& spec, int modes);

/// 1 / sum c^4 from schmidt_spectrum; modes <= 0 picks recommended_modes.
double schmidt_number_1d(const StateSpec& spec, int modes = 0);

// ---------------------------------------------------------------------------
// Moments and the second-order separability value

struct Moments {
  double norm = 0.0;
  std::array<double, 2> mean_x{};
  std::array<std::complex<double>, 2> mean_p{};
  std::array<double, 2> var_x{};
  std::array<double, 2> var_p{};
  double cov_xx = 0.0;  ///< <dx1 dx2>
  double cov_pp = 0.0;  ///< <dp1 dp2>
  /// <dx1 dp2> and <dp1 dx2> before symmetrization; for a real state both
  /// are purely imaginary numerical residue.
  std::complex<double> cov_x1p2{};
  std::complex<double> cov_p1x2{};

  /// Symmetrized (Hermitian) covariances (1/2)<AB + BA>.
  double cov_x1p2_sym() const { return cov_x1p2.real(); }
  double cov_p1x2_sym() const { return cov_p1x2.real(); }
};

/// All moments at a fixed order in rotated coordinates u = (x1-x2)/sqrt2,
/// v = (x1+x2)/sqrt2.
Moments moments_at(const StateSpec& spec, int order);

ConvergedResult<Moments> moments(const StateSpec& spec, ConvergenceOptions options = {});

struct PhCriterion {
  double value;
  bool separable_by_second_order;
  int order_used;
  double delta;
};

/// <dx1 dx2><dp1 dp2> - <dx1 dp2><dp1 dx2> from the moment oracle
/// (hbar = 1). Nonnegative means second-order moments see no entanglement.
PhCriterion ph_criterion(const StateSpec& spec, ConvergenceOptions options = {});

struct BlindWindow {
  double lower;  ///< omega/sigma
  double upper;
};

/// Range of omega/sigma where the nongaussian state passes the second-order
/// test, by bisection on [0.1, 1] and [1, 10]. ParameterError for the
/// Gaussian family; BracketError if the value does not change sign.
BlindWindow ph_blind_window(Family family, ConvergenceOptions options = {});

// ---------------------------------------------------------------------------
// Cross-spectral density and widths

/// W(x1, x1') = \int psi(x1, x2) psi(x1', x2) dx2.
Converged cross_spectral_density(const StateSpec& spec, double x1, double x1_prime,
                                 ConvergenceOptions options = {});

/// Second-moment width of the profile W(x, -x), times sqrt2 so that it is
/// the conditional width sigma_(1|2) for the Gaussian family. Throws
/// NumericalError when the profile has no positive area (the nongaussian
/// anti-diagonal integrates to zero).
Converged antidiagonal_width(const StateSpec& spec, ConvergenceOptions options = {});

/// sqrt2 * std. deviation of x1 from the moment oracle (marginal width in
/// the same convention as antidiagonal_width).
Converged marginal_width(const StateSpec& spec, ConvergenceOptions options = {});

}  // namespace gepr
