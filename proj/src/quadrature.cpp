#include "gepr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gepr/linalg.hpp"

namespace gepr {

namespace {

constexpr int kMinOrder = 2;
constexpr int kMaxOrder = 1024;

void require_order(int order) {
  if (order < kMinOrder || order > kMaxOrder) {
    throw ParameterError("quadrature order must be in [2, 1024], got " +
                         std::to_string(order));
  }
}

struct HermiteEval {
  double pn;          // p_n(t), scaled
  double pn_1;        // p_{n-1}(t), same scale
  double log_sum_sq;  // log sum_{j<n} p_j(t)^2, unscaled
};

// Orthonormal Hermite polynomials (weight exp(-t^2)) by three-term
// recurrence, rescaled on the fly so high orders far from zero stay finite.
HermiteEval hermite_eval(double t, int n) {
  constexpr double kBig = 1e100;
  const double log_big = std::log(kBig);
  double pm1 = 0.0;
  double p = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  double sum = p * p;
  double log_scale = 0.0;
  for (int j = 0; j + 1 < n; ++j) {
    const double next = t * std::sqrt(2.0 / (j + 1)) * p - std::sqrt(double(j) / (j + 1)) * pm1;
    pm1 = p;
    p = next;
    sum += p * p;
    if (std::abs(p) > kBig) {
      p /= kBig;
      pm1 /= kBig;
      sum /= kBig * kBig;
      log_scale += log_big;
    }
  }
  const double pn = t * std::sqrt(2.0 / n) * p - std::sqrt(double(n - 1) / n) * pm1;
  return {pn, p, std::log(sum) + 2.0 * log_scale};
}

struct LegendreEval {
  double pn;
  double derivative;
};

LegendreEval legendre_eval(double t, int n) {
  double pm1 = 1.0;
  double p = t;
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0) * t * p - j * pm1) / (j + 1.0);
    pm1 = p;
    p = next;
  }
  return {p, n * (t * p - pm1) / (t * t - 1.0)};
}

// Exact reflection symmetry of the reference nodes.
void symmetrize(std::vector<double>& nodes) {
  const std::size_t n = nodes.size();
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double m = 0.5 * (nodes[n - 1 - k] - nodes[k]);
    nodes[k] = -m;
    nodes[n - 1 - k] = m;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

}  // namespace

namespace detail {

void throw_non_finite(std::size_t i, double x) {
  std::ostringstream os;
  os << "non-finite integrand at node " << i << " (x = " << x << ")";
  throw NumericalError(os.str());
}

void throw_non_finite(std::size_t i, std::size_t j, double a, double b) {
  std::ostringstream os;
  os << "non-finite integrand at node (" << i << ", " << j << ") (x = " << a << ", " << b
     << ")";
  throw NumericalError(os.str());
}

}  // namespace detail

double QuadratureRule::abscissa(std::size_t k) const noexcept {
  const double t = data_->nodes[k];
  if (kind_ == RuleKind::GaussHermite) return center_ + std::numbers::sqrt2 * scale_ * t;
  return center_ + scale_ * t / (1.0 - t * t);
}

double QuadratureRule::full_weight(std::size_t k) const noexcept {
  if (kind_ == RuleKind::GaussHermite) {
    return std::numbers::sqrt2 * scale_ * data_->premultiplied[k];
  }
  return scale_ * data_->premultiplied[k];
}

QuadratureRule QuadratureRule::reframed(double center, double scale) const {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(center)) {
    throw ParameterError("quadrature frame needs finite center and scale > 0");
  }
  return QuadratureRule(kind_, data_, center, scale);
}

RawRule golub_welsch_hermite(int order) {
  require_order(order);
  std::vector<double> diagonal(order, 0.0);
  std::vector<double> off(order - 1);
  for (int k = 1; k < order; ++k) off[k - 1] = std::sqrt(0.5 * k);
  auto eig = linalg::tridiagonal_eigen(diagonal, off);
  RawRule raw;
  raw.nodes = std::move(eig.values);
  raw.weights.reserve(order);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (double v : eig.first_components) raw.weights.push_back(sqrt_pi * v * v);
  return raw;
}

QuadratureRule gauss_hermite(int order) {
  auto raw = golub_welsch_hermite(order);
  auto tables = std::make_shared<QuadratureRule::Tables>();
  tables->nodes = std::move(raw.nodes);
  for (double& t : tables->nodes) {
    for (int it = 0; it < 3; ++it) {
      const auto h = hermite_eval(t, order);
      const double step = h.pn / (std::sqrt(2.0 * order) * h.pn_1);
      t -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(t))) break;
    }
  }
  std::sort(tables->nodes.begin(), tables->nodes.end());
  symmetrize(tables->nodes);
  tables->weights.reserve(order);
  tables->premultiplied.reserve(order);
  for (double t : tables->nodes) {
    const double log_w = -hermite_eval(t, order).log_sum_sq;
    tables->weights.push_back(std::exp(log_w));
    tables->premultiplied.push_back(std::exp(t * t + log_w));
  }
  return QuadratureRule(RuleKind::GaussHermite, std::move(tables), 0.0,
                        1.0 / std::numbers::sqrt2);
}

QuadratureRule gauss_legendre_mapped(int order, double center, double scale) {
  require_order(order);
  std::vector<double> diagonal(order, 0.0);
  std::vector<double> off(order - 1);
  for (int k = 1; k < order; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  auto eig = linalg::tridiagonal_eigen(diagonal, off);
  auto tables = std::make_shared<QuadratureRule::Tables>();
  tables->nodes = std::move(eig.values);
  for (double& t : tables->nodes) {
    for (int it = 0; it < 3; ++it) {
      const auto l = legendre_eval(t, order);
      const double step = l.pn / l.derivative;
      t -= step;
      if (std::abs(step) <= 1e-16) break;
    }
  }
  std::sort(tables->nodes.begin(), tables->nodes.end());
  symmetrize(tables->nodes);
  for (double t : tables->nodes) {
    const double d = legendre_eval(t, order).derivative;
    const double w = 2.0 / ((1.0 - t * t) * d * d);
    const double jac = (1.0 + t * t) / ((1.0 - t * t) * (1.0 - t * t));
    tables->weights.push_back(w);
    tables->premultiplied.push_back(w * jac);
  }
  return QuadratureRule(RuleKind::GaussLegendreMapped, std::move(tables), 0.0, 1.0)
      .reframed(center, scale);
}

void validate(const ConvergenceOptions& options) {
  if (options.start_order < 16) {
    throw ParameterError("convergence start order must be >= 16");
  }
  if (options.max_order > kMaxOrder || options.max_order < options.start_order) {
    throw ParameterError("convergence max order must be in [start order, 1024]");
  }
  if (!(options.tolerance > 0.0)) {
    throw ParameterError("convergence tolerance must be > 0");
  }
}

Converged converge(const std::function<double(int)>& integral, ConvergenceOptions options) {
  validate(options);
  int order = options.start_order;
  double previous = integral(order);
  while (order * 2 <= options.max_order) {
    const int next = order * 2;
    const double current = integral(next);
    const double delta = std::abs(current - previous);
    if (delta < options.tolerance ||
        (std::abs(current) > 1.0 && delta < options.tolerance * std::abs(current))) {
      return {current, next, delta};
    }
    if (next * 2 > options.max_order) {
      throw ConvergenceError("integral did not converge by order " + std::to_string(next),
                             previous, current, next);
    }
    previous = current;
    order = next;
  }
  throw ConvergenceError("no room to double order " + std::to_string(order), previous,
                         previous, order);
}

}  // namespace gepr
