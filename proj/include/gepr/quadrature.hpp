#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gepr/errors.hpp"

namespace gepr {

enum class RuleKind { GaussHermite, GaussLegendreMapped };

/// Immutable integration rule on the real line.
///
/// The reference nodes/weights are those of the underlying Gauss rule
/// (Hermite: weight exp(-t^2) on R; Legendre: weight 1 on [-1, 1]). A rule
/// also carries a frame (center, scale) that maps reference nodes to
/// physical abscissae:
///   GaussHermite:        x = center + sqrt(2) * scale * t
///                        (exact for a Gaussian of std. deviation `scale`)
///   GaussLegendreMapped: x = center + scale * t / (1 - t^2)
/// `integrate_1d` takes the full integrand f(x); the Gaussian weight is
/// divided out through premultiplied weights.
///
/// Copies share the node tables, so re-framing a rule is cheap.
class QuadratureRule {
 public:
  RuleKind kind() const noexcept { return kind_; }
  int order() const noexcept { return static_cast<int>(data_->nodes.size()); }
  double scale() const noexcept { return scale_; }
  double center() const noexcept { return center_; }

  /// Reference nodes, strictly increasing.
  std::span<const double> nodes() const noexcept { return data_->nodes; }
  /// Reference weights of the Gauss rule. For Hermite orders above ~360 the
  /// outermost weights underflow to zero; the premultiplied weights used for
  /// integration stay finite and positive.
  std::span<const double> weights() const noexcept { return data_->weights; }

  /// Physical abscissa of node k under the current frame.
  double abscissa(std::size_t k) const noexcept;
  /// Weight of node k for integrating a plain function f(x) dx.
  double full_weight(std::size_t k) const noexcept;

  /// Same nodes, different frame. Throws ParameterError for scale <= 0.
  QuadratureRule reframed(double center, double scale) const;

 private:
  struct Tables {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> premultiplied;  // weight divided by the rule's weight function
  };

  QuadratureRule(RuleKind kind, std::shared_ptr<const Tables> data, double center,
                 double scale)
      : kind_(kind), data_(std::move(data)), center_(center), scale_(scale) {}

  friend QuadratureRule gauss_hermite(int order);
  friend QuadratureRule gauss_legendre_mapped(int order, double center, double scale);

  RuleKind kind_;
  std::shared_ptr<const Tables> data_;
  double center_;
  double scale_;
};

/// Gauss-Hermite rule (weight exp(-t^2)), 2 <= order <= 1024, in the
/// identity frame x = t (center 0, scale 1/sqrt(2)).
/// Nodes come from the Golub-Welsch tridiagonal eigenproblem and are then
/// Newton-polished; weights are Christoffel numbers evaluated in log space.
QuadratureRule gauss_hermite(int order);

/// Gauss-Legendre rule mapped to the real line through t/(1-t^2).
QuadratureRule gauss_legendre_mapped(int order, double center = 0.0, double scale = 1.0);

/// Raw Golub-Welsch output (nodes and sqrt(pi) * v0^2 weights) before
/// polishing; exposed for cross-checks.
struct RawRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
RawRule golub_welsch_hermite(int order);

namespace detail {
[[noreturn]] void throw_non_finite(std::size_t i, double x);
[[noreturn]] void throw_non_finite(std::size_t i, std::size_t j, double a, double b);
}  // namespace detail

/// Sum of full_weight(k) * f(abscissa(k)) in ascending node order.
template <class F>
double integrate_1d(F&& f, const QuadratureRule& rule) {
  double sum = 0.0;
  const std::size_t n = static_cast<std::size_t>(rule.order());
  for (std::size_t k = 0; k < n; ++k) {
    const double x = rule.abscissa(k);
    const double v = f(x);
    if (!std::isfinite(v)) detail::throw_non_finite(k, x);
    sum += rule.full_weight(k) * v;
  }
  return sum;
}

/// Tensor-product rule: outer loop over rule_a, inner over rule_b.
template <class F>
double integrate_2d(F&& f, const QuadratureRule& rule_a, const QuadratureRule& rule_b) {
  double sum = 0.0;
  const std::size_t na = static_cast<std::size_t>(rule_a.order());
  const std::size_t nb = static_cast<std::size_t>(rule_b.order());
  for (std::size_t i = 0; i < na; ++i) {
    const double a = rule_a.abscissa(i);
    const double wa = rule_a.full_weight(i);
    double row = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      const double b = rule_b.abscissa(j);
      const double v = f(a, b);
      if (!std::isfinite(v)) detail::throw_non_finite(i, j, a, b);
      row += rule_b.full_weight(j) * v;
    }
    sum += wa * row;
  }
  return sum;
}

struct ConvergenceOptions {
  int start_order = 64;
  double tolerance = 1e-9;
  int max_order = 1024;
};

struct Converged {
  double value;
  int order_used;
  double delta;
};

/// Doubles the order starting at `start_order` until two successive values
/// differ by less than `tolerance` (absolute, or relative once |value| > 1).
/// Throws ConvergenceError carrying the last two values when the next order
/// would exceed `max_order`.
Converged converge(const std::function<double(int)>& integral, ConvergenceOptions options = {});

/// Same doubling loop over an arbitrary result type. `distance(a, b)` returns
/// the change between two successive results and `magnitude(r)` the size
/// used for the relative test. Returns the last result plus order and delta.
template <class Result>
struct ConvergedResult {
  Result value;
  int order_used;
  double delta;
};

void validate(const ConvergenceOptions& options);

template <class Fn, class Distance, class Magnitude>
auto converge_with(Fn&& fn, Distance&& distance, Magnitude&& magnitude,
                   ConvergenceOptions options) -> ConvergedResult<decltype(fn(0))> {
  validate(options);
  int order = options.start_order;
  auto previous = fn(order);
  while (order * 2 <= options.max_order) {
    const int next = order * 2;
    auto current = fn(next);
    const double delta = distance(previous, current);
    const double size = magnitude(current);
    if (delta < options.tolerance || (size > 1.0 && delta < options.tolerance * size)) {
      return {std::move(current), next, delta};
    }
    if (next * 2 > options.max_order) {
      throw ConvergenceError("quadrature did not converge by order " + std::to_string(next),
                             magnitude(previous), size, next);
    }
    previous = std::move(current);
    order = next;
  }
  throw ConvergenceError("no room to double order " + std::to_string(order),
                         magnitude(previous), magnitude(previous), order);
}

}  // namespace gepr
