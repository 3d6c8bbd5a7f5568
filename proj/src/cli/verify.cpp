#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "gepr/cli.hpp"
#include "gepr/closed_forms.hpp"
#include "gepr/oracle.hpp"
#include "gepr/spdc.hpp"

namespace gepr::cli {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::vector<double> log_grid(double lo, double hi, int count) {
  return axis_points(Axis{lo, hi, count, Spacing::Log});
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// \int |psi|^2 on a rotated grid, with an optional amplitude perturbation.
double normalization(const StateSpec& spec, double amplitude_factor,
                     const ConvergenceOptions& options) {
  const auto env = envelope(spec);
  return converge(
             [&](int order) {
               const auto base = gauss_hermite(order);
               const auto u = base.reframed(0.0, 0.5 / std::sqrt(env.diag + env.coupling));
               const auto v = base.reframed(0.0, 0.5 / std::sqrt(env.diag - env.coupling));
               return integrate_2d(
                   [&](double a, double b) {
                     const double psi =
                         amplitude_factor * amplitude(spec, (b + a) / std::numbers::sqrt2,
                                                      (b - a) / std::numbers::sqrt2);
                     return psi * psi;
                   },
                   u, v);
             },
             options)
      .value;
}

}  // namespace

std::vector<CheckResult> run_verification(Fault fault, ConvergenceOptions convergence) {
  std::vector<std::pair<std::string, std::function<Outcome()>>> checks;

  checks.emplace_back("hermite order-2 rule", [] {
    const auto rule = gauss_hermite(2);
    const double node = 1.0 / std::numbers::sqrt2;
    const double weight = 0.5 * std::sqrt(std::numbers::pi);
    double err = 0.0;
    err = std::max(err, std::abs(rule.nodes()[0] + node));
    err = std::max(err, std::abs(rule.nodes()[1] - node));
    err = std::max(err, std::abs(rule.weights()[0] - weight));
    err = std::max(err, std::abs(rule.weights()[1] - weight));
    return Outcome{err < 1e-12, "max error " + sci(err)};
  });

  for (const auto& [name, spec] :
       {std::pair{std::string("normalization gaussian"), StateSpec(Family::GaussianEPR, 1, 2)},
        std::pair{std::string("normalization nongaussian"),
                  StateSpec(Family::NonGaussian, 1, 1)}}) {
    checks.emplace_back(name, [spec, fault, convergence] {
      const double factor =
          fault == Fault::NonGaussianNormalization && spec.family() == Family::NonGaussian
              ? 1.01
              : 1.0;
      const double err = std::abs(normalization(spec, factor, convergence) - 1.0);
      return Outcome{err < 1e-8, "|norm - 1| = " + sci(err)};
    });
  }

  checks.emplace_back("gradient vs finite differences", [] {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> log_width(-1.0, 1.0);
    std::normal_distribution<double> coord(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Family family = k % 2 ? Family::NonGaussian : Family::GaussianEPR;
      const StateSpec spec(family, std::pow(10.0, log_width(rng)), std::pow(10.0, log_width(rng)));
      const double scale = std::min(spec.sigma(), spec.omega());
      // bulk of psi: x1 - x2 ~ sigma, x1 + x2 ~ omega
      const double diff = coord(rng) * spec.sigma();
      const double sum = coord(rng) * spec.omega();
      const double x1 = 0.5 * (sum + diff);
      const double x2 = 0.5 * (sum - diff);
      const double h = 1e-6 * scale;
      const auto [g1, g2] = amplitude_gradient(spec, x1, x2);
      const double f1 = (amplitude(spec, x1 + h, x2) - amplitude(spec, x1 - h, x2)) / (2 * h);
      const double f2 = (amplitude(spec, x1, x2 + h) - amplitude(spec, x1, x2 - h)) / (2 * h);
      const double ref = std::max({std::abs(g1), std::abs(g2), 1e-300});
      worst = std::max({worst, std::abs(g1 - f1) / ref, std::abs(g2 - f2) / ref});
    }
    return Outcome{worst < 1e-6, "max relative error " + sci(worst)};
  });

  for (const Family family : {Family::GaussianEPR, Family::NonGaussian}) {
    checks.emplace_back("quadrature E^2 vs closed form (" + std::string(to_string(family)) + ")",
                        [family, convergence] {
                          double worst = 0.0;
                          for (double r : log_grid(1e-2, 1e2, 21)) {
                            const StateSpec spec(family, r, 1.0);
                            worst = std::max(
                                worst, std::abs(gem_numeric(spec, convergence).value -
                                                gem_closed(spec)));
                          }
                          return Outcome{worst < 1e-6, "max |diff| " + sci(worst)};
                        });
  }

  checks.emplace_back("SVD purity vs quadrature purity", [convergence] {
    double worst = 0.0;
    for (const Family family : {Family::GaussianEPR, Family::NonGaussian}) {
      for (double r : log_grid(1e-2, 1e2, 21)) {
        const StateSpec spec(family, r, 1.0);
        const auto spectrum = schmidt_spectrum(spec, recommended_modes(spec));
        worst = std::max(worst, std::abs(2.0 * (1.0 - spectrum.purity()) -
                                         gem_numeric(spec, convergence).value));
      }
    }
    return Outcome{worst < 1e-5, "max |diff| " + sci(worst)};
  });

  checks.emplace_back("separability value: moments vs closed form", [convergence] {
    double worst = 0.0;
    for (double r : log_grid(0.2, 5.0, 10)) {
      const StateSpec spec(Family::GaussianEPR, r, 1.0);
      worst = std::max(worst,
                       std::abs(ph_criterion(spec, convergence).value - ph_value_closed(spec)));
    }
    return Outcome{worst < 1e-6, "max |diff| " + sci(worst)};
  });

  checks.emplace_back("second-order blind window", [convergence] {
    const auto w = ph_blind_window(Family::NonGaussian, convergence);
    const bool ok = std::abs(w.lower - 0.577) < 0.01 && std::abs(w.upper - 1.732) < 0.01 &&
                    std::abs(w.lower * w.upper - 1.0) < 1e-4;
    std::ostringstream os;
    os.precision(6);
    os << "lower " << w.lower << ", upper " << w.upper;
    return Outcome{ok, os.str()};
  });

  checks.emplace_back("Schmidt number: SVD vs closed forms", [] {
    double worst_k1 = 0.0;
    double worst_sq = 0.0;
    for (double r : log_grid(0.1, 10.0, 10)) {
      const StateSpec spec(Family::GaussianEPR, r, 1.0);
      const double k1 = schmidt_number_1d(spec);
      worst_k1 = std::max(worst_k1, std::abs(k1 - 0.5 * (r + 1.0 / r)));
      worst_sq = std::max(worst_sq, std::abs(k1 * k1 - schmidt_number_squared(spec)));
    }
    return Outcome{worst_k1 < 1e-4 && worst_sq < 1e-3,
                   "K1 " + sci(worst_k1) + ", K1^2 " + sci(worst_sq)};
  });

  checks.emplace_back("measurement closure", [convergence] {
    double worst = 0.0;
    for (double r : log_grid(0.05, 20.0, 10)) {
      const StateSpec spec(Family::GaussianEPR, r, 1.0);
      const double f = antidiagonal_width(spec, convergence).value;
      const double s1 = marginal_width(spec, convergence).value;
      const auto inferred = spdc::infer_gem_from_measurement({Length{f}, Length{s1}});
      worst = std::max(worst, std::abs(inferred.e2 - gem_closed(spec)));
    }
    return Outcome{worst < 1e-9, "max |diff| " + sci(worst)};
  });

  checks.emplace_back("PPKTP example (91.6%)", [] {
    const spdc::SpdcSetup setup(millimeters(10), nanometers(405), micrometers(350),
                                spdc::WidthConvention::FullWidthOmega);
    const double e2 = spdc::biphoton_e2(setup);
    const bool ok = std::abs(e2 - 1.832) <= 0.002 && std::abs(e2 * 50 - 91.6) <= 0.1;
    return Outcome{ok, "E^2 = " + format_number(e2)};
  });

  checks.emplace_back("BBO example (89.8%)", [] {
    const spdc::SpdcSetup setup(millimeters(15.76), nanometers(405), micrometers(180),
                                spdc::WidthConvention::WaistSigmaP);
    const double e2 = spdc::biphoton_e2(setup);
    const bool ok = std::abs(e2 - 1.796) <= 0.001 && std::abs(e2 * 50 - 89.8) <= 0.1;
    return Outcome{ok, "E^2 = " + format_number(e2)};
  });

  checks.emplace_back("sigma/omega = 10 gives 80.2%", [] {
    const double p = percent_entanglement(gem_closed(StateSpec(Family::GaussianEPR, 10, 1)));
    return Outcome{std::abs(p - 80.2) <= 0.1, "percent " + format_number(p)};
  });

  checks.emplace_back("maximal entanglement limits", [] {
    const double lo = gem_closed(Family::GaussianEPR, Ratio(1e-6));
    const double hi = gem_closed(Family::GaussianEPR, Ratio(1e6));
    return Outcome{lo >= 2 - 1e-5 && hi >= 2 - 1e-5,
                   "E^2 " + format_number(lo) + ", " + format_number(hi)};
  });

  checks.emplace_back("nongaussian E^2 = 1 at sigma = omega", [convergence] {
    const StateSpec spec(Family::NonGaussian, 1, 1);
    const double closed = gem_closed(spec);
    const double numeric = gem_numeric(spec, convergence).value;
    return Outcome{closed == 1.0 && std::abs(numeric - 1.0) < 1e-6,
                   "closed " + format_number(closed) + ", quadrature " + format_number(numeric)};
  });

  std::vector<CheckResult> results;
  results.reserve(checks.size());
  for (auto& [name, check] : checks) {
    try {
      auto outcome = check();
      results.push_back({name, outcome.passed, std::move(outcome.detail)});
    } catch (const std::exception& e) {
      results.push_back({name, false, std::string("exception: ") + e.what()});
    }
  }
  return results;
}

}  // namespace gepr::cli
