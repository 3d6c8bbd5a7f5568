#pragma once

#include <optional>
#include <string>

#include "gepr/quadrature.hpp"
#include "gepr/state.hpp"

namespace gepr {

/// A number together with how it was obtained: "closed-form",
/// "quadrature(order=N)" or "svd(modes=N)".
struct LabeledValue {
  double value;
  std::string provenance;
};

inline constexpr const char* kClosedForm = "closed-form";

struct EntanglementReport {
  Family family;
  double sigma;
  double omega;

  LabeledValue e2;
  LabeledValue percent;
  std::optional<LabeledValue> e2_oracle;
  std::optional<double> oracle_delta;

  LabeledValue schmidt_k1;  ///< 1 / purity
  std::optional<LabeledValue> schmidt_k1_svd;
  std::optional<LabeledValue> schmidt_k1_svd_squared;
  std::optional<LabeledValue> schmidt_k_squared;  ///< (s/o + o/s)^2 / 4, Gaussian only

  LabeledValue ph_value;
  bool separable_by_second_order;

  std::optional<LabeledValue> marginal_width;
  std::optional<LabeledValue> conditional_width;
};

struct ReportOptions {
  bool oracle = false;  ///< also run the quadrature and SVD oracles
  ConvergenceOptions convergence{};
  int modes = 0;  ///< SVD grid size; 0 picks recommended_modes
};

EntanglementReport build_report(const StateSpec& spec, const ReportOptions& options = {});

}  // namespace gepr
