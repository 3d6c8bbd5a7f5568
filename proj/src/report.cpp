#include "gepr/report.hpp"

#include "gepr/closed_forms.hpp"
#include "gepr/oracle.hpp"

namespace gepr {

EntanglementReport build_report(const StateSpec& spec, const ReportOptions& options) {
  const bool gaussian = spec.family() == Family::GaussianEPR;
  const double e2 = gem_closed(spec);

  EntanglementReport report{
      .family = spec.family(),
      .sigma = spec.sigma(),
      .omega = spec.omega(),
      .e2 = {e2, kClosedForm},
      .percent = {percent_entanglement(e2), kClosedForm},
      .e2_oracle = std::nullopt,
      .oracle_delta = std::nullopt,
      .schmidt_k1 = {schmidt_number_closed(spec), kClosedForm},
      .schmidt_k1_svd = std::nullopt,
      .schmidt_k1_svd_squared = std::nullopt,
      .schmidt_k_squared = std::nullopt,
      .ph_value = {0.0, kClosedForm},
      .separable_by_second_order = false,
      .marginal_width = std::nullopt,
      .conditional_width = std::nullopt,
  };

  if (gaussian) {
    report.schmidt_k_squared = LabeledValue{schmidt_number_squared(spec), kClosedForm};
    const double ph = ph_value_closed(spec);
    report.ph_value = {ph, kClosedForm};
    report.separable_by_second_order = ph >= -1e-9;
    const auto w = widths_closed(spec);
    report.marginal_width = LabeledValue{w.marginal, kClosedForm};
    report.conditional_width = LabeledValue{w.conditional, kClosedForm};
  } else {
    const auto ph = ph_criterion(spec, options.convergence);
    report.ph_value = {ph.value, quadrature_label(ph.order_used)};
    report.separable_by_second_order = ph.separable_by_second_order;
  }

  if (options.oracle) {
    const auto numeric = gem_numeric(spec, options.convergence);
    report.e2_oracle = LabeledValue{numeric.value, quadrature_label(numeric.order_used)};
    report.oracle_delta = numeric.delta;
    const int modes = options.modes > 0 ? options.modes : recommended_modes(spec);
    const double k1 = schmidt_spectrum(spec, modes).schmidt_number();
    report.schmidt_k1_svd = LabeledValue{k1, svd_label(modes)};
    report.schmidt_k1_svd_squared = LabeledValue{k1 * k1, svd_label(modes)};
  }
  return report;
}

}  // namespace gepr
