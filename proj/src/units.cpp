#include "gepr/units.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

#include "gepr/errors.hpp"

namespace gepr {

namespace {

// value in meters = number / divisor
constexpr std::array<std::pair<std::string_view, double>, 6> kUnits{{
    {"nm", 1e9},
    {"um", 1e6},
    {"\xC2\xB5m", 1e6},  // micro sign
    {"\xCE\xBCm", 1e6},  // greek mu
    {"mm", 1e3},
    {"m", 1.0},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

ParsedNumber parse_number_or_length(std::string_view text) {
  const std::string buffer(trim(text));
  if (buffer.empty()) throw ParameterError("empty numeric value");
  char* end = nullptr;
  const double value = std::strtod(buffer.c_str(), &end);
  if (end == buffer.c_str()) {
    throw ParameterError("'" + buffer + "' does not start with a number");
  }
  const std::string_view suffix = trim(std::string_view(end));
  if (!std::isfinite(value)) throw ParameterError("'" + buffer + "' is not finite");
  if (suffix.empty()) return {value, false};
  for (const auto& [name, divisor] : kUnits) {
    if (suffix == name) return {value / divisor, true};
  }
  throw ParameterError("unknown length unit '" + std::string(suffix) +
                       "' (expected nm, um, mm or m)");
}

Length parse_length(std::string_view text) {
  const auto parsed = parse_number_or_length(text);
  if (!parsed.has_unit) {
    throw ParameterError("'" + std::string(trim(text)) +
                         "' needs a length unit (nm, um, mm or m)");
  }
  return Length{parsed.value};
}

std::string format_length(Length length) {
  const double m = length.meters;
  const double a = std::abs(m);
  const char* unit = "m";
  double v = m;
  if (a < 1e-6) {
    unit = "nm";
    v = m * 1e9;
  } else if (a < 1e-3) {
    unit = "um";
    v = m * 1e6;
  } else if (a < 1.0) {
    unit = "mm";
    v = m * 1e3;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g%s", v, unit);
  return buf;
}

}  // namespace gepr
