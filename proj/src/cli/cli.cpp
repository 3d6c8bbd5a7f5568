#include "gepr/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gepr/closed_forms.hpp"
#include "gepr/errors.hpp"
#include "gepr/oracle.hpp"
#include "gepr/report.hpp"
#include "gepr/spdc.hpp"
#include "gepr/units.hpp"

namespace gepr::cli {

namespace {

using nlohmann::ordered_json;

ordered_json labeled(const LabeledValue& v) {
  return {{"value", v.value}, {"provenance", v.provenance}};
}

ordered_json labeled(double value, const std::string& provenance) {
  return labeled(LabeledValue{value, provenance});
}

ordered_json input(double value, bool meters) {
  return {{"value", value}, {"unit", meters ? "m" : "1"}, {"provenance", "input"}};
}

template <class T>
ordered_json optional_labeled(const std::optional<T>& v) {
  return v ? labeled(*v) : ordered_json(nullptr);
}

ordered_json report_json(const EntanglementReport& r, bool meters) {
  ordered_json j;
  j["family"] = std::string(to_string(r.family));
  j["sigma"] = input(r.sigma, meters);
  j["omega"] = input(r.omega, meters);
  j["e2"] = labeled(r.e2);
  j["percent"] = labeled(r.percent);
  j["schmidt_k1"] = labeled(r.schmidt_k1);
  j["schmidt_k_squared"] = optional_labeled(r.schmidt_k_squared);
  j["ph_value"] = labeled(r.ph_value);
  j["separable_by_second_order"] = r.separable_by_second_order;
  j["marginal_width"] = optional_labeled(r.marginal_width);
  j["conditional_width"] = optional_labeled(r.conditional_width);
  if (r.e2_oracle) {
    ordered_json o;
    o["e2"] = labeled(*r.e2_oracle);
    o["delta"] = labeled(r.oracle_delta.value_or(0.0), r.e2_oracle->provenance);
    o["percent"] = labeled(percent_entanglement(r.e2_oracle->value), r.e2_oracle->provenance);
    o["schmidt_k1"] = optional_labeled(r.schmidt_k1_svd);
    o["schmidt_k1_squared"] = optional_labeled(r.schmidt_k1_svd_squared);
    j["oracle"] = std::move(o);
  }
  return j;
}

struct Common {
  std::string output;
  double tolerance = ConvergenceOptions{}.tolerance;
  int max_order = ConvergenceOptions{}.max_order;
  int start_order = ConvergenceOptions{}.start_order;

  ConvergenceOptions convergence() const {
    ConvergenceOptions options{start_order, tolerance, max_order};
    validate(options);
    return options;
  }
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--output", common.output, "Write the result to this file");
  sub->add_option("--tolerance", common.tolerance, "Quadrature convergence tolerance");
  sub->add_option("--max-order", common.max_order, "Quadrature order cap (<= 1024)");
  sub->add_option("--start-order", common.start_order, "First quadrature order (>= 16)");
}

struct StateArgs {
  std::string family = "gaussian";
  std::string sigma;
  std::string omega;
};

void add_state(CLI::App* sub, StateArgs& state, bool required) {
  sub->add_option("--family", state.family, "gaussian | nongaussian")
      ->check(CLI::IsMember({"gaussian", "nongaussian", "gaussian-epr", "non-gaussian"}));
  auto* s = sub->add_option("--sigma", state.sigma, "Correlation width (number or length)");
  auto* o = sub->add_option("--omega", state.omega, "Anti-correlation width (number or length)");
  if (required) {
    s->required();
    o->required();
  }
}

struct ParsedState {
  StateSpec spec;
  bool meters;
};

ParsedState parse_state(const StateArgs& args) {
  if (args.sigma.empty() || args.omega.empty()) {
    throw ParameterError("--sigma and --omega are required");
  }
  const auto s = parse_number_or_length(args.sigma);
  const auto o = parse_number_or_length(args.omega);
  if (s.has_unit != o.has_unit) {
    throw ParameterError("--sigma and --omega must both carry units or both be unitless");
  }
  return {StateSpec(parse_family(args.family), s.value, o.value), s.has_unit};
}

// ---------------------------------------------------------------------------

struct GemArgs {
  StateArgs state;
  bool oracle = false;
  int modes = 0;
};

void cmd_gem(const GemArgs& args, const Common& common, std::ostream& out) {
  const auto [spec, meters] = parse_state(args.state);
  ReportOptions options{args.oracle, common.convergence(), args.modes};
  out << report_json(build_report(spec, options), meters).dump(2) << '\n';
}

struct SpdcArgs {
  std::string crystal_length;
  std::string pump_wavelength;
  std::string pump_width;
  std::string convention = "omega";
  std::optional<double> target_e2;
  std::string solve;
  std::string branch = "omega-gt-sigma";
  bool oracle = false;
};

void cmd_spdc(const SpdcArgs& args, const Common& common, std::ostream& out) {
  const Length length = parse_length(args.crystal_length);
  const Length wavelength = parse_length(args.pump_wavelength);
  const auto convention = spdc::parse_width_convention(args.convention);
  const Length sigma = spdc::correlation_width(length, wavelength);

  ordered_json j;
  j["crystal_length"] = input(length.meters, true);
  j["pump_wavelength"] = input(wavelength.meters, true);
  j["width_convention"] = std::string(spdc::to_string(convention));

  if (!args.solve.empty()) {
    if (args.solve != "pump-width") throw ParameterError("--solve accepts only 'pump-width'");
    if (!args.target_e2) throw ParameterError("--solve pump-width needs --target-e2");
    const auto branch = spdc::parse_branch(args.branch);
    const auto solution = spdc::required_pump_width(length, wavelength, *args.target_e2, branch);
    const Length width = convention == spdc::WidthConvention::FullWidthOmega ? solution.omega
                                                                             : solution.sigma_p;
    const spdc::SpdcSetup setup(length, wavelength, width, convention);
    j["target_e2"] = input(*args.target_e2, false);
    j["branch"] = args.branch;
    j["sigma"] = labeled(sigma.meters, kClosedForm);
    j["omega"] = labeled(solution.omega.meters, kClosedForm);
    j["sigma_p"] = labeled(solution.sigma_p.meters, kClosedForm);
    j["pump_width"] = labeled(width.meters, kClosedForm);
    j["pump_width_text"] = format_length(width);
    j["e2_round_trip"] = labeled(spdc::biphoton_e2(setup), kClosedForm);
    out << j.dump(2) << '\n';
    return;
  }

  if (args.pump_width.empty()) throw ParameterError("--pump-width is required");
  const spdc::SpdcSetup setup(length, wavelength, parse_length(args.pump_width), convention);
  ReportOptions options{args.oracle, common.convergence(), 0};
  const auto report = spdc::biphoton_gem(setup, options);
  j["pump_width"] = input(setup.pump_width().meters, true);
  j["mapped"] = {{"sigma", labeled(setup.sigma().meters, kClosedForm)},
                 {"omega", labeled(setup.omega().meters, kClosedForm)},
                 {"sigma_p", labeled(setup.sigma_p().meters, kClosedForm)}};
  auto body = report_json(report, true);
  body.erase("sigma");
  body.erase("omega");
  for (auto& [key, value] : body.items()) j[key] = value;
  j["predicted_f"] = optional_labeled(report.conditional_width);
  j["predicted_sigma1"] = optional_labeled(report.marginal_width);
  out << j.dump(2) << '\n';
}

struct SweepArgs {
  std::string quantity;
  std::string min;
  std::string max;
  int count = 101;
  std::string spacing = "log";
  std::string family = "gaussian";
  std::string sigma;
  std::string crystal_length;
  std::string pump_wavelength;
  std::string convention = "omega";
};

void cmd_sweep(const SweepArgs& args, const Common& common, std::ostream& out) {
  SweepRequest request{};
  request.quantity = parse_quantity(args.quantity);
  request.family = parse_family(args.family);
  request.convention = spdc::parse_width_convention(args.convention);
  request.convergence = common.convergence();
  const bool lengths = request.quantity == Quantity::SpdcVsPumpWidth;
  auto bound = [&](const std::string& text, const char* name) {
    if (text.empty()) throw ParameterError(std::string(name) + " is required");
    const auto parsed = parse_number_or_length(text);
    if (lengths && !parsed.has_unit) {
      throw ParameterError(std::string(name) + " needs a length unit for spdc_vs_pumpwidth");
    }
    if (!lengths && parsed.has_unit) {
      throw ParameterError(std::string(name) + " is a dimensionless ratio here");
    }
    return parsed.value;
  };
  request.axis = Axis{bound(args.min, "--min"), bound(args.max, "--max"), args.count,
                      args.spacing == "linear" ? Spacing::Linear : Spacing::Log};
  if (lengths) {
    if (!args.sigma.empty()) {
      request.sigma = parse_length(args.sigma);
    } else if (!args.crystal_length.empty() && !args.pump_wavelength.empty()) {
      request.sigma = spdc::correlation_width(parse_length(args.crystal_length),
                                              parse_length(args.pump_wavelength));
    } else {
      throw ParameterError("spdc_vs_pumpwidth needs --sigma or both --L and --lambda-p");
    }
  }
  write_sweep(request, out);
}

struct SchmidtArgs {
  StateArgs state;
  int modes = 0;
  int show = 10;
};

void cmd_schmidt(const SchmidtArgs& args, std::ostream& out) {
  const auto [spec, meters] = parse_state(args.state);
  const int modes = args.modes > 0 ? args.modes : recommended_modes(spec);
  const auto spectrum = schmidt_spectrum(spec, modes);
  const std::string label = svd_label(modes);
  const double k1 = spectrum.schmidt_number();

  ordered_json j;
  j["family"] = std::string(to_string(spec.family()));
  j["sigma"] = input(spec.sigma(), meters);
  j["omega"] = input(spec.omega(), meters);
  const auto shown = std::min<std::size_t>(spectrum.coefficients.size(),
                                           static_cast<std::size_t>(std::max(args.show, 0)));
  j["coefficients"] = {
      {"values", std::vector<double>(spectrum.coefficients.begin(),
                                     spectrum.coefficients.begin() + shown)},
      {"provenance", label}};
  j["truncation_error"] = labeled(spectrum.truncation_error, label);
  j["purity"] = labeled(spectrum.purity(), label);
  j["schmidt_k1"] = labeled(k1, label);
  j["schmidt_k1_squared"] = labeled(k1 * k1, label);
  j["schmidt_k1_closed"] = labeled(schmidt_number_closed(spec), kClosedForm);
  j["schmidt_k_squared_closed"] = spec.family() == Family::GaussianEPR
                             ? labeled(schmidt_number_squared(spec), kClosedForm)
                             : ordered_json(nullptr);
  out << j.dump(2) << '\n';
}

struct PhArgs {
  StateArgs state;
  bool window = false;
};

void cmd_ph(const PhArgs& args, const Common& common, std::ostream& out) {
  ordered_json j;
  const auto options = common.convergence();
  if (args.window) {
    const auto w = ph_blind_window(Family::NonGaussian, options);
    j["family"] = "nongaussian";
    j["window_lower_omega_over_sigma"] = labeled(w.lower, "quadrature(order=adaptive)");
    j["window_upper_omega_over_sigma"] = labeled(w.upper, "quadrature(order=adaptive)");
    j["higher_order_window"] = {{"values", {kAnnotationWindowLower, kAnnotationWindowUpper}},
                                {"provenance", "annotation_only"}};
  }
  if (!args.state.sigma.empty() || !args.state.omega.empty() || !args.window) {
    const auto [spec, meters] = parse_state(args.state);
    const auto ph = ph_criterion(spec, options);
    j["family"] = std::string(to_string(spec.family()));
    j["sigma"] = input(spec.sigma(), meters);
    j["omega"] = input(spec.omega(), meters);
    j["ph_value"] = labeled(ph.value, quadrature_label(ph.order_used));
    j["ph_value_closed"] = spec.family() == Family::GaussianEPR
                               ? labeled(ph_value_closed(spec), kClosedForm)
                               : ordered_json(nullptr);
    j["separable_by_second_order"] = ph.separable_by_second_order;
  }
  out << j.dump(2) << '\n';
}

struct WidthsArgs {
  StateArgs state;
  std::string f;
  std::string sigma1;
};

void cmd_widths(const WidthsArgs& args, const Common& common, std::ostream& out) {
  ordered_json j;
  if (!args.f.empty() || !args.sigma1.empty()) {
    if (args.f.empty() || args.sigma1.empty()) {
      throw ParameterError("--f and --sigma1 must be given together");
    }
    const spdc::MeasuredWidths measured{parse_length(args.f), parse_length(args.sigma1)};
    const auto inferred = spdc::infer_gem_from_measurement(measured);
    j["f"] = input(measured.f.meters, true);
    j["sigma1"] = input(measured.sigma1.meters, true);
    j["e2"] = labeled(inferred.e2, kClosedForm);
    j["percent"] = labeled(percent_entanglement(inferred.e2), kClosedForm);
    j["clamped"] = inferred.clamped;
    out << j.dump(2) << '\n';
    return;
  }

  const auto [spec, meters] = parse_state(args.state);
  const auto options = common.convergence();
  j["family"] = std::string(to_string(spec.family()));
  j["sigma"] = input(spec.sigma(), meters);
  j["omega"] = input(spec.omega(), meters);
  if (spec.family() == Family::GaussianEPR) {
    const auto w = widths_closed(spec);
    j["marginal_closed"] = labeled(w.marginal, kClosedForm);
    j["conditional_closed"] = labeled(w.conditional, kClosedForm);
    j["ratio_closed"] = labeled(w.ratio(), kClosedForm);
  }
  const auto s1 = marginal_width(spec, options);
  j["sigma1_oracle"] = labeled(s1.value, quadrature_label(s1.order_used));
  try {
    const auto f = antidiagonal_width(spec, options);
    j["f_oracle"] = labeled(f.value, quadrature_label(f.order_used));
    const auto inferred = spdc::infer_gem_from_measurement({Length{f.value}, Length{s1.value}});
    j["e2_inferred"] = labeled(inferred.e2, quadrature_label(f.order_used));
  } catch (const NumericalError& e) {
    j["f_oracle"] = nullptr;
    j["e2_inferred"] = nullptr;
    j["note"] = e.what();
  }
  j["e2_closed"] = labeled(gem_closed(spec), kClosedForm);
  out << j.dump(2) << '\n';
}

int cmd_verify(const std::string& fault_name, const Common& common, std::ostream& out,
               std::ostream& err) {
  Fault fault = Fault::None;
  if (fault_name == "ng-normalization") {
    fault = Fault::NonGaussianNormalization;
  } else if (fault_name != "none") {
    throw ParameterError("unknown fault '" + fault_name + "'");
  }
  const auto results = run_verification(fault, common.convergence());
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  int passed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width))
        << r.name << "  " << r.detail << '\n';
    passed += r.passed ? 1 : 0;
  }
  out << passed << "/" << results.size() << " checks passed\n";
  for (const auto& r : results) {
    if (!r.passed) err << "verification failed: " << r.name << '\n';
  }
  return passed == static_cast<int>(results.size()) ? kSuccess : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement of the generalized EPR state and its nongaussian extension"};
  app.name("gepr");
  app.require_subcommand(1, 1);

  Common common;
  GemArgs gem_args;
  SpdcArgs spdc_args;
  SweepArgs sweep_args;
  SchmidtArgs schmidt_args;
  PhArgs ph_args;
  WidthsArgs widths_args;
  std::string fault = "none";

  auto* gem = app.add_subcommand("gem", "Entanglement report for one state");
  add_state(gem, gem_args.state, true);
  gem->add_flag("--oracle", gem_args.oracle, "Also run the quadrature and SVD oracles");
  gem->add_option("--modes", gem_args.modes, "SVD grid size (default: automatic)");

  auto* spdc_cmd = app.add_subcommand("spdc", "Entanglement of SPDC photon pairs");
  spdc_cmd->add_option("--L", spdc_args.crystal_length, "Crystal length, e.g. 10mm")->required();
  spdc_cmd->add_option("--lambda-p", spdc_args.pump_wavelength, "Pump wavelength, e.g. 405nm")
      ->required();
  spdc_cmd->add_option("--pump-width", spdc_args.pump_width, "Pump width, e.g. 350um");
  spdc_cmd->add_option("--width-convention", spdc_args.convention,
                       "omega (full width) | sigma-p (waist, omega = 2 sigma_p)")
      ->check(CLI::IsMember({"omega", "sigma-p"}));
  spdc_cmd->add_option("--target-e2", spdc_args.target_e2, "Target E^2 for --solve");
  spdc_cmd->add_option("--solve", spdc_args.solve, "pump-width")
      ->check(CLI::IsMember({"pump-width"}));
  spdc_cmd->add_option("--branch", spdc_args.branch, "omega-gt-sigma | omega-lt-sigma")
      ->check(CLI::IsMember({"omega-gt-sigma", "omega-lt-sigma"}));
  spdc_cmd->add_flag("--oracle", spdc_args.oracle, "Also run the quadrature and SVD oracles");

  auto* sweep = app.add_subcommand("sweep", "CSV parameter sweep");
  sweep->footer(
      "The in_nongaussian_window column of gem_both is annotation_only: it marks\n"
      "0.63 < omega/sigma < 1.58, a window taken from an external higher-order\n"
      "criterion that this program does not compute.");
  sweep->add_option("--quantity", sweep_args.quantity,
                    "gem_gaussian | gem_nongaussian | gem_both | spdc_vs_pumpwidth | "
                    "ph_value | surface_gem")
      ->required();
  sweep->add_option("--min", sweep_args.min, "Axis start")->required();
  sweep->add_option("--max", sweep_args.max, "Axis end")->required();
  sweep->add_option("--count", sweep_args.count, "Number of points (>= 2)");
  sweep->add_option("--spacing", sweep_args.spacing, "linear | log")
      ->check(CLI::IsMember({"linear", "log"}));
  sweep->add_option("--family", sweep_args.family, "Family for ph_value / surface_gem")
      ->check(CLI::IsMember({"gaussian", "nongaussian", "gaussian-epr", "non-gaussian"}));
  sweep->add_option("--sigma", sweep_args.sigma, "Fixed sigma for spdc_vs_pumpwidth");
  sweep->add_option("--L", sweep_args.crystal_length, "Crystal length (spdc_vs_pumpwidth)");
  sweep->add_option("--lambda-p", sweep_args.pump_wavelength, "Pump wavelength");
  sweep->add_option("--width-convention", sweep_args.convention, "omega | sigma-p")
      ->check(CLI::IsMember({"omega", "sigma-p"}));

  auto* verify = app.add_subcommand("verify", "Run the invariant self-check suite");
  verify->add_option("--debug-fault", fault, "Fault injection: none | ng-normalization")
      ->check(CLI::IsMember({"none", "ng-normalization"}));

  auto* schmidt = app.add_subcommand("schmidt", "Schmidt spectrum by SVD");
  add_state(schmidt, schmidt_args.state, true);
  schmidt->add_option("--modes", schmidt_args.modes, "SVD grid size (default: automatic)");
  schmidt->add_option("--show", schmidt_args.show, "Number of coefficients to print");

  auto* ph = app.add_subcommand("ph", "Second-order separability value from moments");
  add_state(ph, ph_args.state, false);
  ph->add_flag("--window", ph_args.window, "Locate the nongaussian blind window");

  auto* widths = app.add_subcommand("widths", "Marginal/conditional widths and inference");
  add_state(widths, widths_args.state, false);
  widths->add_option("--f", widths_args.f, "Measured anti-diagonal width");
  widths->add_option("--sigma1", widths_args.sigma1, "Measured beam width");

  for (auto* sub : {gem, spdc_cmd, sweep, verify, schmidt, ph, widths}) add_common(sub, common);

  std::vector<const char*> argv{"gepr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  std::ostringstream buffer;
  int status = kSuccess;
  try {
    if (*gem) cmd_gem(gem_args, common, buffer);
    if (*spdc_cmd) cmd_spdc(spdc_args, common, buffer);
    if (*sweep) cmd_sweep(sweep_args, common, buffer);
    if (*verify) status = cmd_verify(fault, common, buffer, err);
    if (*schmidt) cmd_schmidt(schmidt_args, buffer);
    if (*ph) cmd_ph(ph_args, common, buffer);
    if (*widths) cmd_widths(widths_args, common, buffer);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UnsupportedFormula& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kVerificationFailure;
  }

  if (common.output.empty()) {
    out << buffer.str();
    return status;
  }
  std::ofstream file(common.output, std::ios::binary);
  if (!file) {
    err << "error: cannot open '" << common.output << "' for writing\n";
    return kIoError;
  }
  file << buffer.str();
  file.close();
  if (!file) {
    err << "error: failed writing '" << common.output << "'\n";
    return kIoError;
  }
  return status;
}

}  // namespace gepr::cli
