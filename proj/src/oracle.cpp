#include "gepr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gepr/errors.hpp"
#include "gepr/root_finding.hpp"

namespace gepr {

namespace {

using std::numbers::sqrt2;

// Standard deviation of the Gaussian exp(-k x^2).
double sd_for(double k) { return 1.0 / std::sqrt(2.0 * k); }

// Rule for \int dx psi(y, x) psi(y', x): the x-envelope of the product is
// exp(-2a x^2 + 2b (y + y') x), centered at b (y + y') / (2a).
QuadratureRule inner_rule(const QuadratureRule& base, const GaussianEnvelope& env, double y,
                          double y_prime) {
  const double center = env.coupling * (y + y_prime) / (2.0 * env.diag);
  return base.reframed(center, sd_for(2.0 * env.diag));
}

double kernel_value(const StateSpec& spec, const GaussianEnvelope& env,
                    const QuadratureRule& base, double y, double y_prime) {
  const auto rule = inner_rule(base, env, y, y_prime);
  return integrate_1d(
      [&](double x) { return amplitude(spec, y, x) * amplitude(spec, y_prime, x); }, rule);
}

// Precision of the kernel envelope along s = (y + y')/sqrt2.
double kernel_s_precision(const GaussianEnvelope& env) {
  return (env.diag - env.coupling) * (env.diag + env.coupling) / env.diag;
}

}  // namespace

std::string quadrature_label(int order) {
  return "quadrature(order=" + std::to_string(order) + ")";
}

std::string svd_label(int modes) { return "svd(modes=" + std::to_string(modes) + ")"; }

double reduced_kernel_value(const StateSpec& spec, double y, double y_prime, int order) {
  return kernel_value(spec, envelope(spec), gauss_hermite(order), y, y_prime);
}

ReducedKernel reduced_kernel(const StateSpec& spec, int order) {
  const auto env = envelope(spec);
  const auto base = gauss_hermite(order);
  // diagonal rho(y, y) ~ exp(-2 k_s y^2)
  const auto grid = base.reframed(0.0, sd_for(2.0 * kernel_s_precision(env)));
  const auto n = static_cast<std::size_t>(order);
  ReducedKernel kernel{{}, {}, linalg::Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    kernel.nodes.push_back(grid.abscissa(i));
    kernel.weights.push_back(grid.full_weight(i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      kernel.values(i, j) = kernel_value(spec, env, base, kernel.nodes[i], kernel.nodes[j]);
    }
  }
  return kernel;
}

double ReducedKernel::trace() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * values(i, i);
  return sum;
}

double ReducedKernel::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      worst = std::max(worst, std::abs(values(i, j) - values(j, i)));
    }
  }
  return worst;
}

double ReducedKernel::min_weighted_eigenvalue() const {
  const std::size_t n = nodes.size();
  linalg::Matrix weighted(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      weighted(i, j) = std::sqrt(weights[i] * weights[j]) * values(i, j);
    }
  }
  return linalg::symmetric_eigenvalues(std::move(weighted)).front();
}

double ReducedKernel::purity() const {
  double sum = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * weights[j] * values(i, j) * values(i, j);
    }
  }
  return sum;
}

double purity_quadrature(const StateSpec& spec, int order) {
  const auto env = envelope(spec);
  const auto base = gauss_hermite(order);
  // rho^2 ~ exp(-2 k_s s^2 - 2a d^2)
  const auto s_rule = base.reframed(0.0, sd_for(2.0 * kernel_s_precision(env)));
  const auto d_rule = base.reframed(0.0, sd_for(2.0 * env.diag));
  return integrate_2d(
      [&](double s, double d) {
        const double rho = kernel_value(spec, env, base, (s + d) / sqrt2, (s - d) / sqrt2);
        return rho * rho;
      },
      s_rule, d_rule);
}

Converged gem_numeric(const StateSpec& spec, ConvergenceOptions options) {
  const auto purity = converge([&](int order) { return purity_quadrature(spec, order); },
                               options);
  double e2 = 2.0 * (1.0 - purity.value);
  constexpr double slack = 1e-9;
  if (e2 < -slack || e2 > 2.0 + slack) {
    throw NumericalError("quadrature E^2 = " + std::to_string(e2) + " outside [0, 2]");
  }
  e2 = std::clamp(e2, 0.0, 2.0);
  return {e2, purity.order_used, 2.0 * purity.delta};
}

// ---------------------------------------------------------------------------

double SchmidtSpectrum::purity() const {
  double sum = 0.0;
  for (double c : coefficients) sum += c * c * c * c;
  return sum;
}

double SchmidtSpectrum::schmidt_number() const { return 1.0 / purity(); }

namespace {

// rho in (-1, 1) with psi ~ sum_n rho^n phi_n(x1) phi_n(x2) (Mehler).
double mehler_rho(const GaussianEnvelope& env) {
  const double root = std::sqrt((env.diag - env.coupling) * (env.diag + env.coupling));
  return env.coupling / (env.diag + root);
}

}  // namespace

double schmidt_mode_scale(const StateSpec& spec) {
  const auto env = envelope(spec);
  const double rho = mehler_rho(env);
  return std::sqrt((1.0 + rho * rho) / (2.0 * env.diag * (1.0 - rho * rho)));
}

int recommended_modes(const StateSpec& spec) {
  const double rho = mehler_rho(envelope(spec));
  const double mu = rho * rho;
  int modes = 32;
  if (mu > 1e-300) {
    modes = static_cast<int>(std::ceil(std::log(1e-8) / std::log(mu))) + 24;
  }
  return std::clamp(modes, 32, 1024);
}

SchmidtSpectrum schmidt_spectrum(const StateSpec& spec, int modes) {
  if (modes < 8 || modes > 1024) {
    throw ParameterError("Schmidt grid needs 8 <= modes <= 1024, got " + std::to_string(modes));
  }
  const auto grid = gauss_hermite(modes).reframed(0.0, schmidt_mode_scale(spec) / sqrt2);
  const auto n = static_cast<std::size_t>(modes);
  std::vector<double> x(n);
  std::vector<double> root_w(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = grid.abscissa(i);
    root_w[i] = std::sqrt(grid.full_weight(i));
  }
  linalg::Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      m(i, j) = amplitude(spec, x[i], x[j]) * root_w[i] * root_w[j];
    }
  }
  auto values = linalg::singular_values(std::move(m));
  double mass = 0.0;
  for (double v : values) mass += v * v;
  const double norm = std::sqrt(mass);
  for (double& v : values) v /= norm;
  return {std::move(values), std::abs(1.0 - mass), modes};
}

double schmidt_number_1d(const StateSpec& spec, int modes) {
  if (modes <= 0) modes = recommended_modes(spec);
  return schmidt_spectrum(spec, modes).schmidt_number();
}

// ---------------------------------------------------------------------------

Moments moments_at(const StateSpec& spec, int order) {
  const auto env = envelope(spec);
  const auto base = gauss_hermite(order);
  // |psi|^2 ~ exp(-2(a+b) u^2 - 2(a-b) v^2)
  const auto u_rule = base.reframed(0.0, sd_for(2.0 * (env.diag + env.coupling)));
  const auto v_rule = base.reframed(0.0, sd_for(2.0 * (env.diag - env.coupling)));

  double norm = 0, x1 = 0, x2 = 0, x11 = 0, x22 = 0, x12 = 0;
  double p1 = 0, p2 = 0, g11 = 0, g22 = 0, g12 = 0, xp12 = 0, xp21 = 0;
  const auto n = static_cast<std::size_t>(order);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = u_rule.abscissa(i);
    const double wu = u_rule.full_weight(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = v_rule.abscissa(j);
      const double w = wu * v_rule.full_weight(j);
      const double a = (v + u) / sqrt2;
      const double b = (v - u) / sqrt2;
      const double psi = amplitude(spec, a, b);
      const auto [d1, d2] = amplitude_gradient(spec, a, b);
      if (!std::isfinite(psi) || !std::isfinite(d1) || !std::isfinite(d2)) {
        detail::throw_non_finite(i, j, a, b);
      }
      const double dens = w * psi * psi;
      norm += dens;
      x1 += dens * a;
      x2 += dens * b;
      x11 += dens * a * a;
      x22 += dens * b * b;
      x12 += dens * a * b;
      p1 += w * psi * d1;
      p2 += w * psi * d2;
      g11 += w * d1 * d1;
      g22 += w * d2 * d2;
      g12 += w * d1 * d2;
      xp12 += w * psi * a * d2;
      xp21 += w * psi * b * d1;
    }
  }
  using cplx = std::complex<double>;
  const cplx minus_i{0.0, -1.0};
  Moments m;
  m.norm = norm;
  m.mean_x = {x1, x2};
  m.mean_p = {minus_i * p1, minus_i * p2};
  m.var_x = {x11 - x1 * x1, x22 - x2 * x2};
  const double rp1 = m.mean_p[0].real();
  const double rp2 = m.mean_p[1].real();
  m.var_p = {g11 - rp1 * rp1, g22 - rp2 * rp2};
  m.cov_xx = x12 - x1 * x2;
  m.cov_pp = g12 - rp1 * rp2;
  m.cov_x1p2 = minus_i * xp12 - x1 * m.mean_p[1];
  m.cov_p1x2 = minus_i * xp21 - m.mean_p[0] * x2;
  return m;
}

namespace {

std::array<double, 16> flatten(const Moments& m) {
  return {m.norm,           m.mean_x[0],       m.mean_x[1],       m.mean_p[0].imag(),
          m.mean_p[1].imag(), m.var_x[0],      m.var_x[1],        m.var_p[0],
          m.var_p[1],       m.cov_xx,          m.cov_pp,          m.cov_x1p2.real(),
          m.cov_x1p2.imag(), m.cov_p1x2.real(), m.cov_p1x2.imag(), 0.0};
}

}  // namespace

ConvergedResult<Moments> moments(const StateSpec& spec, ConvergenceOptions options) {
  return converge_with(
      [&](int order) { return moments_at(spec, order); },
      [](const Moments& a, const Moments& b) {
        const auto fa = flatten(a);
        const auto fb = flatten(b);
        double worst = 0.0;
        for (std::size_t k = 0; k < fa.size(); ++k) {
          worst = std::max(worst, std::abs(fa[k] - fb[k]));
        }
        return worst;
      },
      [](const Moments& m) {
        double size = 0.0;
        for (double v : flatten(m)) size = std::max(size, std::abs(v));
        return size;
      },
      options);
}

PhCriterion ph_criterion(const StateSpec& spec, ConvergenceOptions options) {
  const auto result = moments(spec, options);
  const auto& m = result.value;
  const double value = m.cov_xx * m.cov_pp - m.cov_x1p2_sym() * m.cov_p1x2_sym();
  return {value, value >= -1e-9, result.order_used, result.delta};
}

BlindWindow ph_blind_window(Family family, ConvergenceOptions options) {
  if (family != Family::NonGaussian) {
    throw ParameterError("the second-order blind window exists only for the nongaussian family");
  }
  auto value_at = [&](double omega_over_sigma) {
    return ph_criterion(StateSpec(family, 1.0, omega_over_sigma), options).value;
  };
  const BisectOptions bisect_options{1e-7, 0.0, 200};
  return {bisect(value_at, 0.1, 1.0, bisect_options), bisect(value_at, 1.0, 10.0, bisect_options)};
}

// ---------------------------------------------------------------------------

Converged cross_spectral_density(const StateSpec& spec, double x1, double x1_prime,
                                 ConvergenceOptions options) {
  return converge(
      [&](int order) { return reduced_kernel_value(spec, x1, x1_prime, order); }, options);
}

Converged antidiagonal_width(const StateSpec& spec, ConvergenceOptions options) {
  const auto env = envelope(spec);
  return converge(
      [&](int order) {
        const auto base = gauss_hermite(order);
        // W(x, -x) ~ exp(-2a x^2)
        const auto rule = base.reframed(0.0, sd_for(2.0 * env.diag));
        double area = 0.0;
        double abs_area = 0.0;
        double second = 0.0;
        for (std::size_t k = 0; k < static_cast<std::size_t>(order); ++k) {
          const double x = rule.abscissa(k);
          const double w = rule.full_weight(k) * kernel_value(spec, env, base, x, -x);
          area += w;
          abs_area += std::abs(w);
          second += w * x * x;
        }
        if (!(area > 1e-12 * abs_area) || !(second > 0.0)) {
          throw NumericalError("anti-diagonal profile W(x, -x) has no positive area; "
                               "its second-moment width is undefined");
        }
        return sqrt2 * std::sqrt(second / area);
      },
      options);
}

Converged marginal_width(const StateSpec& spec, ConvergenceOptions options) {
  const auto m = moments(spec, options);
  return {sqrt2 * std::sqrt(m.value.var_x[0]), m.order_used, m.delta};
}

}  // namespace gepr
