#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "gepr/cli.hpp"
#include "gepr/closed_forms.hpp"
#include "gepr/errors.hpp"
#include "gepr/oracle.hpp"

namespace gepr::cli {

namespace {

using Row = std::vector<std::string>;

// Evaluates rows [0, count) on up to hardware_concurrency threads; rows are
// stored by index so output order does not depend on scheduling.
template <class Fn>
std::vector<Row> compute_rows(std::size_t count, Fn&& fn) {
  std::vector<Row> rows(count);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = fn(i);
    return rows;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) rows[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string flag(bool value) { return value ? "true" : "false"; }

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

Quantity parse_quantity(std::string_view name) {
  if (name == "gem_gaussian") return Quantity::GemGaussian;
  if (name == "gem_nongaussian") return Quantity::GemNonGaussian;
  if (name == "gem_both") return Quantity::GemBoth;
  if (name == "spdc_vs_pumpwidth") return Quantity::SpdcVsPumpWidth;
  if (name == "ph_value") return Quantity::PhValue;
  if (name == "surface_gem") return Quantity::SurfaceGem;
  throw ParameterError("unknown sweep quantity '" + std::string(name) + "'");
}

std::vector<double> axis_points(const Axis& axis) {
  if (axis.count < 2) throw ParameterError("sweep needs count >= 2");
  if (!(axis.min < axis.max)) throw ParameterError("sweep needs min < max");
  if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) {
    throw ParameterError("sweep bounds must be finite");
  }
  std::vector<double> points(static_cast<std::size_t>(axis.count));
  const double last = axis.count - 1;
  if (axis.spacing == Spacing::Linear) {
    const double step = (axis.max - axis.min) / last;
    for (int k = 0; k < axis.count; ++k) points[k] = axis.min + k * step;
  } else {
    if (!(axis.min > 0.0)) throw ParameterError("log spacing needs min > 0");
    const double lo = std::log10(axis.min);
    const double step = (std::log10(axis.max) - lo) / last;
    for (int k = 0; k < axis.count; ++k) points[k] = std::pow(10.0, lo + k * step);
  }
  points.front() = axis.min;
  points.back() = axis.max;
  return points;
}

void write_sweep(const SweepRequest& request, std::ostream& out) {
  const auto xs = axis_points(request.axis);
  const auto n = xs.size();
  auto num = [](double v) { return format_number(v); };

  Row header;
  std::vector<Row> rows;
  switch (request.quantity) {
    case Quantity::GemGaussian:
      header = {"ratio_sigma_over_omega", "e2", "percent"};
      rows = compute_rows(n, [&](std::size_t i) {
        const double e2 = gem_closed(Family::GaussianEPR, Ratio(xs[i]));
        return Row{num(xs[i]), num(e2), num(percent_entanglement(e2))};
      });
      break;
    case Quantity::GemNonGaussian:
      header = {"ratio_omega_over_sigma", "e2", "percent"};
      rows = compute_rows(n, [&](std::size_t i) {
        const double e2 = gem_closed(StateSpec(Family::NonGaussian, 1.0, xs[i]));
        return Row{num(xs[i]), num(e2), num(percent_entanglement(e2))};
      });
      break;
    case Quantity::GemBoth:
      header = {"ratio_omega_over_sigma", "percent_gaussian", "percent_nongaussian",
                "in_nongaussian_window"};
      rows = compute_rows(n, [&](std::size_t i) {
        const double g = gem_closed(StateSpec(Family::GaussianEPR, 1.0, xs[i]));
        const double ng = gem_closed(StateSpec(Family::NonGaussian, 1.0, xs[i]));
        const bool in_window = xs[i] > kAnnotationWindowLower && xs[i] < kAnnotationWindowUpper;
        return Row{num(xs[i]), num(percent_entanglement(g)), num(percent_entanglement(ng)),
                   flag(in_window)};
      });
      break;
    case Quantity::SpdcVsPumpWidth: {
      if (!request.sigma) throw ParameterError("spdc_vs_pumpwidth needs a fixed sigma");
      const double sigma = request.sigma->meters;
      const bool waist = request.convention == spdc::WidthConvention::WaistSigmaP;
      header = {"pump_width_m", "sigma_m", "e2", "percent"};
      rows = compute_rows(n, [&](std::size_t i) {
        const double omega = waist ? 2.0 * xs[i] : xs[i];
        const double e2 = gem_closed(StateSpec(Family::GaussianEPR, sigma, omega));
        return Row{num(xs[i]), num(sigma), num(e2), num(percent_entanglement(e2))};
      });
      break;
    }
    case Quantity::PhValue:
      header = {"ratio_omega_over_sigma", "ph_value", "separable_by_second_order"};
      rows = compute_rows(n, [&](std::size_t i) {
        const auto ph = ph_criterion(StateSpec(request.family, 1.0, xs[i]), request.convergence);
        return Row{num(xs[i]), num(ph.value), flag(ph.separable_by_second_order)};
      });
      break;
    case Quantity::SurfaceGem:
      header = {"sigma", "omega", "percent"};
      rows = compute_rows(n * n, [&](std::size_t k) {
        const double s = xs[k / n];
        const double o = xs[k % n];
        return Row{num(s), num(o), num(percent_entanglement(gem_closed(
                                       StateSpec(request.family, s, o))))};
      });
      break;
  }

  auto emit = [&out](const Row& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << row[c];
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
}

}  // namespace gepr::cli
