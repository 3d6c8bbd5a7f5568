#pragma once

#include <string>
#include <string_view>

namespace gepr {

/// Length in meters.
struct Length {
  double meters = 0.0;

  double micrometers() const noexcept { return meters * 1e6; }
  friend auto operator<=>(const Length&, const Length&) = default;
};

inline Length meters(double v) { return Length{v}; }
inline Length millimeters(double v) { return Length{v / 1e3}; }
inline Length micrometers(double v) { return Length{v / 1e6}; }
inline Length nanometers(double v) { return Length{v / 1e9}; }

struct ParsedNumber {
  double value;   ///< meters when has_unit, raw number otherwise
  bool has_unit;
};

/// Parses "<number>[ ]<unit>" with unit one of nm, um, µm, mm, m, or a bare
/// number. Throws ParameterError on malformed input.
ParsedNumber parse_number_or_length(std::string_view text);

/// Like parse_number_or_length but a unit suffix is mandatory.
Length parse_length(std::string_view text);

/// Shortest "%.9g" rendering in the most readable of nm/um/mm/m.
std::string format_length(Length length);

}  // namespace gepr
