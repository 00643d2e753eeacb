#pragma once

// Plot-ready polylines of equilibrium properties and cycle paths, plus the
// CSV/JSON writers used to hand them to external plotting tools.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tlsthermo/cycles.hpp"
#include "tlsthermo/equilibrium.hpp"

namespace tls {

enum class Property { energy, entropy, massieu, temperature };

/// Units of the hotness axis: -1/(k_B T) in 1/J, or -1/T in 1/K.
enum class HotnessUnit { per_joule, per_kelvin };

enum class PathCoords {
  hotness_energy,
  hotness_entropy,
  hotness_massieu,
  entropy_energy,
  entropy_temperature,
  entropy_gap,
};

/// Parses "h,E", "h,S", "h,M", "S,E", "S,T" or "S,gap".
std::optional<PathCoords> parse_path_coords(std::string_view text);
std::string_view to_string(PathCoords coords) noexcept;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct CurveSeries {
  std::string label;
  std::string x_name;
  std::string y_name;
  std::vector<Point> points;
  friend bool operator==(const CurveSeries&, const CurveSeries&) = default;
};

/// Closed interval of hotness values -1/(k_B T), in 1/J.
struct HotnessRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Range of x = gap/(k_B T) swept by the entropy-axis curves (log-spaced).
struct XRange {
  double lo = 0.05;
  double hi = 30.0;
};

inline constexpr std::size_t kDefaultCurveSamples = 256;
inline constexpr std::size_t kDefaultLegSamples = 64;

/// E, S or M at a fixed gap over `n` evenly spaced hotness values. A sample
/// falling exactly on h = 0 (|T| = inf) is dropped.
CurveSeries property_vs_hotness(Property property, EnergyGap gap, HotnessRange range, std::size_t n,
                                const Constants& c = Constants::codata(),
                                HotnessUnit unit = HotnessUnit::per_joule);

/// E or T versus S at a fixed gap (T > 0 branch), sorted by ascending S.
CurveSeries property_vs_entropy(Property property, EnergyGap gap, std::size_t n,
                                const Constants& c = Constants::codata(), XRange xr = {});

/// Gap versus S at a fixed positive temperature, sorted by ascending S.
CurveSeries gap_vs_entropy(Temperature t, std::size_t n, const Constants& c = Constants::codata(),
                           XRange xr = {});

/// One series per leg. Leg endpoints are the cycle's own corner states, so
/// the polygon closes exactly.
std::vector<CurveSeries> cycle_path(const CarnotCycle& cycle, PathCoords coords,
                                    std::size_t n_per_leg = kDefaultLegSamples,
                                    HotnessUnit unit = HotnessUnit::per_joule);
std::vector<CurveSeries> cycle_path(const OttoCycle& cycle, PathCoords coords,
                                    std::size_t n_per_leg = kDefaultLegSamples,
                                    HotnessUnit unit = HotnessUnit::per_joule);

enum class ExportFormat { csv, json };

/// `v` rounded to `digits` significant decimal digits.
double round_significant(double v, int digits);

/// CSV layout:
///   # series,x_name,y_name
///   # <label>,<x_name>,<y_name>      one line per series
///   <label>,<x>,<y>                  one line per point
/// JSON layout: [{"label":..,"x_name":..,"y_name":..,"points":[[x,y],..]},..]
/// Numbers carry `precision` significant digits; lines end in '\n'.
void write_series(std::ostream& os, std::span<const CurveSeries> series, ExportFormat format,
                  int precision = 12);

/// write_series to a file; I/O failures throw DomainError(io) naming the path.
void export_series(const std::filesystem::path& path, std::span<const CurveSeries> series,
                   ExportFormat format, int precision = 12);

/// Reads the JSON layout produced by write_series.
std::vector<CurveSeries> parse_json_series(std::string_view text);

}  // namespace tls
