#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "gepr/cli.hpp"
#include "gepr/errors.hpp"

using namespace gepr;
using namespace gepr::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(const std::vector<std::string>& args) {
  const auto r = run_cli(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return json::parse(r.out);
}

// Every number must sit under "value" or "values" next to a "provenance".
void check_provenance(const json& j, const std::string& path = "$") {
  if (j.is_object()) {
    const bool labeled = j.contains("value") || j.contains("values");
    if (labeled) {
      CHECK_MESSAGE(j.contains("provenance"), path);
      if (j.contains("provenance")) CHECK(j["provenance"].is_string());
    }
    for (const auto& [key, value] : j.items()) {
      const std::string where = path + "." + key;
      if (value.is_number()) {
        CHECK_MESSAGE(labeled, where);
        CHECK_MESSAGE((key == "value"), where);
      } else if (key == "values") {
        CHECK(labeled);
      } else {
        check_provenance(value, where);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) CHECK_MESSAGE(!v.is_number(), path);
  }
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gepr_test_" + name);
}

}  // namespace

TEST_CASE("gem: disentangled Gaussian state") {
  const auto j = run_json({"gem", "--family", "gaussian", "--sigma", "1", "--omega", "1"});
  CHECK(j["e2"]["value"] == 0.0);
  CHECK(j["percent"]["value"] == 0.0);
  CHECK(j["e2"]["provenance"] == "closed-form");
  CHECK(j["separable_by_second_order"] == true);
  check_provenance(j);
}

TEST_CASE("gem: sigma/omega = 10") {
  const auto j = run_json({"gem", "--family", "gaussian", "--sigma", "10", "--omega", "1"});
  CHECK(std::abs(j["percent"]["value"].get<double>() - 80.2) < 0.1);
  CHECK(j["schmidt_k1"]["value"].get<double>() == doctest::Approx(5.05));
  CHECK(j["schmidt_k_squared"]["value"].get<double>() == doctest::Approx(25.5025));
  CHECK(j["ph_value"]["value"].get<double>() < 0.0);
}

TEST_CASE("gem: nongaussian with oracle") {
  const auto j = run_json({"gem", "--family", "nongaussian", "--sigma", "1", "--omega", "1", "--oracle"});
  CHECK(j["e2"]["value"] == 1.0);
  REQUIRE(j.contains("oracle"));
  CHECK(std::abs(j["oracle"]["e2"]["value"].get<double>() - 1.0) < 1e-6);
  CHECK(j["oracle"]["e2"]["provenance"].get<std::string>().rfind("quadrature(order=", 0) == 0);
  CHECK(j["oracle"]["schmidt_k1"]["provenance"].get<std::string>().rfind("svd(modes=", 0) == 0);
  CHECK(j["schmidt_k_squared"].is_null());
  CHECK(j["ph_value"]["provenance"].get<std::string>().rfind("quadrature(", 0) == 0);
  check_provenance(j);
}

TEST_CASE("gem: lengths with units") {
  const auto j = run_json({"gem", "--sigma", "10um", "--omega", "100um"});
  CHECK(j["sigma"]["unit"] == "m");
  CHECK(j["sigma"]["value"].get<double>() == doctest::Approx(1e-5));
  CHECK(std::abs(j["percent"]["value"].get<double>() - 80.2) < 0.1);
}

TEST_CASE("gem: parameter errors exit 2 with one diagnostic line") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"gem", "--sigma", "1"},
           {"gem", "--sigma", "-1", "--omega", "1"},
           {"gem", "--sigma", "0", "--omega", "1"},
           {"gem", "--sigma", "1mm", "--omega", "2"},
           {"gem", "--sigma", "abc", "--omega", "2"},
           {"gem", "--family", "epr", "--sigma", "1", "--omega", "2"},
           {"gem", "--sigma", "1", "--omega", "2", "--max-order", "4096"},
           {"bogus"},
           {}}) {
    const auto r = run_cli(args);
    CHECK(r.code == kUsageError);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
  }
  const auto r = run_cli({"gem", "--sigma", "-1", "--omega", "1"});
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

TEST_CASE("help exits 0") {
  const auto r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sweep") != std::string::npos);
  const auto s = run_cli({"sweep", "--help"});
  CHECK(s.code == 0);
  CHECK(s.out.find("annotation_only") != std::string::npos);
}

TEST_CASE("spdc: PPKTP and BBO examples") {
  const auto a = run_json({"spdc", "--L", "10mm", "--lambda-p", "405nm", "--pump-width", "350um",
                           "--width-convention", "omega"});
  CHECK(std::abs(a["percent"]["value"].get<double>() - 91.6) < 0.1);
  CHECK(a["mapped"]["sigma"]["value"].get<double>() == doctest::Approx(14.658e-6).epsilon(1e-4));
  CHECK(a["mapped"]["omega"]["value"].get<double>() == doctest::Approx(350e-6));
  CHECK(a["predicted_f"]["value"].get<double>() > 0.0);
  CHECK(a["predicted_sigma1"]["value"].get<double>() > a["predicted_f"]["value"].get<double>());
  check_provenance(a);

  const auto b = run_json({"spdc", "--L", "15.76mm", "--lambda-p", "405nm", "--pump-width", "180um",
                           "--width-convention", "sigma-p"});
  CHECK(std::abs(b["percent"]["value"].get<double>() - 89.8) < 0.1);
  CHECK(b["mapped"]["omega"]["value"].get<double>() == doctest::Approx(360e-6));
}

TEST_CASE("spdc: solve for the pump width") {
  const auto j = run_json({"spdc", "--L", "10mm", "--lambda-p", "405nm", "--target-e2", "1.832",
                           "--solve", "pump-width"});
  const double omega = j["omega"]["value"].get<double>();
  CHECK(std::abs(omega - 348.385e-6) < 0.01e-6);
  CHECK(std::abs(j["e2_round_trip"]["value"].get<double>() - 1.832) < 1e-6);
  check_provenance(j);

  const auto below = run_json({"spdc", "--L", "10mm", "--lambda-p", "405nm", "--target-e2", "1.832",
                               "--solve", "pump-width", "--branch", "omega-lt-sigma",
                               "--width-convention", "sigma-p"});
  CHECK(below["omega"]["value"].get<double>() < below["sigma"]["value"].get<double>());
  CHECK(below["pump_width"]["value"].get<double>() ==
        doctest::Approx(below["omega"]["value"].get<double>() / 2));
}

TEST_CASE("spdc: usage errors") {
  CHECK(run_cli({"spdc", "--L", "10", "--lambda-p", "405nm", "--pump-width", "350um"}).code == kUsageError);
  CHECK(run_cli({"spdc", "--L", "10mm", "--lambda-p", "405nm"}).code == kUsageError);
  CHECK(run_cli({"spdc", "--L", "10mm", "--lambda-p", "405nm", "--solve", "pump-width"}).code ==
        kUsageError);
  CHECK(run_cli({"spdc", "--L", "10mm", "--lambda-p", "405nm", "--target-e2", "2.5", "--solve",
                 "pump-width"}).code == kUsageError);
  CHECK(run_cli({"spdc", "--L", "10mm", "--lambda-p", "405nm", "--pump-width", "350um",
                 "--width-convention", "fwhm"}).code == kUsageError);
}

TEST_CASE("sweep headers per quantity") {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"--quantity", "gem_gaussian"}, "ratio_sigma_over_omega,e2,percent"},
      {{"--quantity", "gem_nongaussian"}, "ratio_omega_over_sigma,e2,percent"},
      {{"--quantity", "gem_both"},
       "ratio_omega_over_sigma,percent_gaussian,percent_nongaussian,in_nongaussian_window"},
      {{"--quantity", "ph_value"}, "ratio_omega_over_sigma,ph_value,separable_by_second_order"},
      {{"--quantity", "surface_gem"}, "sigma,omega,percent"},
  };
  for (const auto& [extra, header] : cases) {
    std::vector<std::string> args{"sweep", "--min", "0.5", "--max", "2", "--count", "3"};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = run_cli(args);
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(r.out.substr(0, r.out.find('\n')) == header);
    const bool surface = header == "sigma,omega,percent";
    CHECK(rows.size() == (surface ? 10u : 4u));
  }
  const auto spdc = run_cli({"sweep", "--quantity", "spdc_vs_pumpwidth", "--L", "10mm", "--lambda-p",
                             "405nm", "--min", "1um", "--max", "1mm", "--count", "5"});
  REQUIRE(spdc.code == 0);
  CHECK(spdc.out.substr(0, spdc.out.find('\n')) == "pump_width_m,sigma_m,e2,percent");
}

TEST_CASE("surface sweep is row-major with sigma outer") {
  const auto rows = parse_csv(run_cli({"sweep", "--quantity", "surface_gem", "--min", "1", "--max",
                                       "2", "--count", "2", "--spacing", "linear"}).out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[1] == std::vector<std::string>{"1", "1", "0"});
  CHECK(rows[2][0] == "1");
  CHECK(rows[2][1] == "2");
  CHECK(rows[3][0] == "2");
  CHECK(rows[3][1] == "1");
}

TEST_CASE("gem_both marks the annotation window") {
  const auto rows = parse_csv(run_cli({"sweep", "--quantity", "gem_both", "--min", "0.5", "--max",
                                       "2.0", "--count", "4", "--spacing", "linear"}).out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[1][3] == "false");  // 0.5
  CHECK(rows[2][3] == "true");   // 1.0
  CHECK(rows[3][3] == "true");   // 1.5
  CHECK(rows[4][3] == "false");  // 2.0
}

TEST_CASE("sweep output is byte-identical across runs") {
  const std::vector<std::string> args{"sweep", "--quantity", "ph_value", "--family", "nongaussian",
                                      "--min", "0.2", "--max", "5", "--count", "9"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto g1 = run_cli({"gem", "--sigma", "1", "--omega", "3", "--oracle"});
  const auto g2 = run_cli({"gem", "--sigma", "1", "--omega", "3", "--oracle"});
  CHECK(g1.out == g2.out);
}

TEST_CASE("sweep usage errors") {
  CHECK(run_cli({"sweep", "--quantity", "gem_gaussian", "--min", "1", "--max", "2", "--count", "1"}).code ==
        kUsageError);
  CHECK(run_cli({"sweep", "--quantity", "gem_gaussian", "--min", "2", "--max", "1"}).code == kUsageError);
  CHECK(run_cli({"sweep", "--quantity", "gem_gaussian", "--min", "0", "--max", "1"}).code == kUsageError);
  CHECK(run_cli({"sweep", "--quantity", "gem_gaussian", "--min", "1mm", "--max", "2mm"}).code ==
        kUsageError);
  CHECK(run_cli({"sweep", "--quantity", "spdc_vs_pumpwidth", "--sigma", "10um", "--min", "1",
                 "--max", "2"}).code == kUsageError);
  CHECK(run_cli({"sweep", "--quantity", "spdc_vs_pumpwidth", "--min", "1um", "--max", "2um"}).code ==
        kUsageError);
  CHECK(run_cli({"sweep", "--quantity", "volume", "--min", "1", "--max", "2"}).code == kUsageError);
  // a linear axis through zero reaches nonpositive ratios
  CHECK(run_cli({"sweep", "--quantity", "gem_gaussian", "--min", "-1", "--max", "1", "--spacing",
                 "linear"}).code == kUsageError);
}

TEST_CASE("--output writes a file; unwritable path exits 3") {
  const auto path = temp_path("sweep.csv");
  std::filesystem::remove(path);
  const auto r = run_cli({"sweep", "--quantity", "gem_gaussian", "--min", "0.1", "--max", "10",
                          "--count", "5", "--output", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str().rfind("ratio_sigma_over_omega,e2,percent\n", 0) == 0);
  std::filesystem::remove(path);

  const auto bad = run_cli({"gem", "--sigma", "1", "--omega", "2", "--output",
                            "/nonexistent-dir/out.json"});
  CHECK(bad.code == kIoError);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("schmidt subcommand") {
  const auto j = run_json({"schmidt", "--sigma", "1", "--omega", "3", "--show", "4"});
  REQUIRE(j["coefficients"]["values"].size() == 4);
  const double c0 = j["coefficients"]["values"][0].get<double>();
  const double c1 = j["coefficients"]["values"][1].get<double>();
  CHECK(c1 / c0 == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(j["schmidt_k1"]["value"].get<double>() == doctest::Approx(5.0 / 3).epsilon(1e-8));
  CHECK(j["schmidt_k1_squared"]["value"].get<double>() ==
        doctest::Approx(j["schmidt_k_squared_closed"]["value"].get<double>()).epsilon(1e-7));
  check_provenance(j);
  CHECK(run_cli({"schmidt", "--sigma", "1", "--omega", "3", "--modes", "4"}).code == kUsageError);
}

TEST_CASE("ph subcommand") {
  const auto j = run_json({"ph", "--sigma", "1", "--omega", "2"});
  CHECK(j["ph_value"]["value"].get<double>() == doctest::Approx(-0.140625).epsilon(1e-8));
  CHECK(j["ph_value_closed"]["value"].get<double>() == doctest::Approx(-0.140625));
  CHECK(j["separable_by_second_order"] == false);
  check_provenance(j);

  const auto ng = run_json({"ph", "--family", "nongaussian", "--sigma", "1", "--omega", "1"});
  CHECK(ng["separable_by_second_order"] == true);
  CHECK(ng["ph_value_closed"].is_null());
  CHECK(run_cli({"ph", "--sigma", "1"}).code == kUsageError);
}

TEST_CASE("widths subcommand") {
  const auto j = run_json({"widths", "--sigma", "1", "--omega", "2"});
  CHECK(std::abs(j["f_oracle"]["value"].get<double>() - std::sqrt(1.6)) < 1e-6);
  CHECK(std::abs(j["sigma1_oracle"]["value"].get<double>() - std::sqrt(2.5)) < 1e-6);
  CHECK(std::abs(j["e2_inferred"]["value"].get<double>() - j["e2_closed"]["value"].get<double>()) < 1e-9);
  check_provenance(j);

  const auto ng = run_json({"widths", "--family", "nongaussian", "--sigma", "1", "--omega", "2"});
  CHECK(ng["f_oracle"].is_null());
  CHECK(ng.contains("note"));

  const auto m = run_json({"widths", "--f", "5um", "--sigma1", "10um"});
  CHECK(m["e2"]["value"].get<double>() == doctest::Approx(1.0));
  CHECK(m["clamped"] == false);
  const auto clamp = run_json({"widths", "--f", "12um", "--sigma1", "10um"});
  CHECK(clamp["clamped"] == true);
  CHECK(run_cli({"widths", "--f", "5", "--sigma1", "10um"}).code == kUsageError);
  CHECK(run_cli({"widths", "--f", "5um"}).code == kUsageError);
}

TEST_CASE("axis points") {
  const auto lin = axis_points({1.0, 2.0, 5, Spacing::Linear});
  CHECK(lin == std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0});
  const auto log = axis_points({0.01, 100.0, 201, Spacing::Log});
  CHECK(log.front() == 0.01);
  CHECK(log.back() == 100.0);
  CHECK(log[100] == 1.0);
  CHECK_THROWS_AS(axis_points({1.0, 1.0, 5, Spacing::Linear}), ParameterError);
  CHECK_THROWS_AS(axis_points({0.0, 1.0, 5, Spacing::Log}), ParameterError);
  CHECK(format_number(80.19801980198) == "80.1980198");
  CHECK(format_number(1e-5) == "1e-05");
}

TEST_CASE("verify with an injected normalization fault") {
  const auto r = run_cli({"verify", "--debug-fault", "ng-normalization"});
  CHECK(r.code == kVerificationFailure);
  CHECK(r.err.find("normalization nongaussian") != std::string::npos);
  CHECK(r.out.find("FAIL  normalization nongaussian") != std::string::npos);
  CHECK(r.out.find("PASS  normalization gaussian") != std::string::npos);
}

TEST_CASE("verify passes on a clean build") {
  const auto r = run_cli({"verify"});
  CHECK(r.code == kSuccess);
  CHECK(r.err.empty());
  const auto passes = std::count(r.out.begin(), r.out.end(), '\n') - 1;
  CHECK(passes >= 12);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("lower 0.577") != std::string::npos);
  CHECK(r.out.find("upper 1.732") != std::string::npos);
}
