#include "tlsthermo/diagrams.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "tlsthermo/error.hpp"
#include "tlsthermo/kernels.hpp"

namespace tls {

namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& msg) { throw DomainError(ErrorKind::invalid_argument, msg); }

std::string fmt_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string gap_tag(EnergyGap gap) { return "gap=" + fmt_g(gap.joules(), 6) + "J"; }

const char* hotness_axis(HotnessUnit unit) {
  return unit == HotnessUnit::per_joule ? "-1/(k_B T) [1/J]" : "-1/T [1/K]";
}

struct Batch {
  std::vector<double> p, e, s;
};

// Runs the dispatched batch kernel and re-checks the equilibrium invariants on
// every sample before anything is emitted.
Batch evaluate_batch(const std::vector<double>& x) {
  Batch b{std::vector<double>(x.size()), std::vector<double>(x.size()), std::vector<double>(x.size())};
  kernels::evaluate(x, {b.p, b.e, b.s});
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool ok = std::isfinite(b.p[i]) && std::isfinite(b.e[i]) && std::isfinite(b.s[i]) && b.p[i] >= 0.0 &&
                    b.p[i] <= 1.0 && std::abs(b.e[i] - (b.p[i] - 0.5)) <= 1e-14 && b.s[i] >= 0.0 &&
                    b.s[i] <= std::numbers::ln2 && ((x[i] > 0.0) == (b.p[i] < 0.5) || b.p[i] == 0.5);
    if (!ok) {
      throw DomainError(ErrorKind::range, "sample at x = " + fmt_g(x[i], 12) + " violates the equilibrium invariants");
    }
  }
  return b;
}

// x descending from xr.hi to xr.lo, log-spaced; entropy then ascends.
std::vector<double> entropy_axis_grid(std::size_t n, XRange xr) {
  if (n < 2) invalid("a curve needs at least 2 samples");
  if (!(xr.lo > 0.0 && xr.hi > xr.lo && xr.hi <= kXMax))
    invalid("x range must satisfy 0 < lo < hi <= " + fmt_g(kXMax, 6));
  std::vector<double> x(n);
  const double ratio = xr.lo / xr.hi;
  for (std::size_t i = 0; i < n; ++i)
    x[i] = xr.hi * std::pow(ratio, static_cast<double>(i) / static_cast<double>(n - 1));
  x.back() = xr.lo;
  return x;
}

struct Coordinates {
  std::string x_name;
  std::string y_name;
  std::function<Point(const EquilibriumState&)> eval;
};

Coordinates coordinates(PathCoords coords, HotnessUnit unit) {
  auto h = [unit](const EquilibriumState& s) {
    return unit == HotnessUnit::per_joule ? s.hotness() : s.temperature().hotness();
  };
  switch (coords) {
    case PathCoords::hotness_energy:
      return {hotness_axis(unit), "E [J]", [h](const EquilibriumState& s) { return Point{h(s), mean_energy(s)}; }};
    case PathCoords::hotness_entropy:
      return {hotness_axis(unit), "S [J/K]", [h](const EquilibriumState& s) { return Point{h(s), entropy(s)}; }};
    case PathCoords::hotness_massieu:
      return {hotness_axis(unit), "M [J/K]", [h](const EquilibriumState& s) { return Point{h(s), massieu(s)}; }};
    case PathCoords::entropy_energy:
      return {"S [J/K]", "E [J]", [](const EquilibriumState& s) { return Point{entropy(s), mean_energy(s)}; }};
    case PathCoords::entropy_temperature:
      return {"S [J/K]", "T [K]",
              [](const EquilibriumState& s) { return Point{entropy(s), s.temperature().kelvin()}; }};
    case PathCoords::entropy_gap:
      return {"S [J/K]", "gap [J]", [](const EquilibriumState& s) { return Point{entropy(s), s.gap().joules()}; }};
  }
  invalid("unknown path coordinates");
}

enum class LegKind { isotherm, isoentrope, isogap };

struct LegPath {
  std::string label;
  LegKind kind;
  const EquilibriumState* from;
  const EquilibriumState* to;
};

// Interior state at fraction f of a leg, following the leg's own parameter:
// the gap for isotherms and isoentropes, x for fixed-gap legs.
EquilibriumState interior_state(const LegPath& leg, double f) {
  const EquilibriumState& a = *leg.from;
  const EquilibriumState& b = *leg.to;
  const Constants& c = a.constants();
  const double gap = a.gap().joules() + (b.gap().joules() - a.gap().joules()) * f;
  switch (leg.kind) {
    case LegKind::isotherm:
      return EquilibriumState(a.temperature(), EnergyGap::joules(gap), c);
    case LegKind::isoentrope:
      return EquilibriumState(Temperature::kelvin(gap / (c.k_b * a.x())), EnergyGap::joules(gap), c);
    case LegKind::isogap: {
      const double x = a.x() + (b.x() - a.x()) * f;
      return EquilibriumState(Temperature::kelvin(a.gap().joules() / (c.k_b * x)), a.gap(), c);
    }
  }
  return a;
}

std::vector<CurveSeries> trace(const std::vector<LegPath>& legs, PathCoords coords, std::size_t n_per_leg,
                               HotnessUnit unit) {
  if (n_per_leg < 2) invalid("a cycle leg needs at least 2 samples");
  const Coordinates cs = coordinates(coords, unit);
  std::vector<CurveSeries> out;
  out.reserve(legs.size());
  for (const auto& leg : legs) {
    CurveSeries series{leg.label + " " + std::string(to_string(coords)), cs.x_name, cs.y_name, {}};
    series.points.reserve(n_per_leg);
    series.points.push_back(cs.eval(*leg.from));
    for (std::size_t i = 1; i + 1 < n_per_leg; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(n_per_leg - 1);
      series.points.push_back(cs.eval(interior_state(leg, f)));
    }
    series.points.push_back(cs.eval(*leg.to));
    out.push_back(std::move(series));
  }
  return out;
}

std::string json_string(const std::string& s) { return json(s).dump(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

std::optional<PathCoords> parse_path_coords(std::string_view text) {
  if (text == "h,E") return PathCoords::hotness_energy;
  if (text == "h,S") return PathCoords::hotness_entropy;
  if (text == "h,M") return PathCoords::hotness_massieu;
  if (text == "S,E") return PathCoords::entropy_energy;
  if (text == "S,T") return PathCoords::entropy_temperature;
  if (text == "S,gap") return PathCoords::entropy_gap;
  return std::nullopt;
}

std::string_view to_string(PathCoords coords) noexcept {
  switch (coords) {
    case PathCoords::hotness_energy: return "h-E";
    case PathCoords::hotness_entropy: return "h-S";
    case PathCoords::hotness_massieu: return "h-M";
    case PathCoords::entropy_energy: return "S-E";
    case PathCoords::entropy_temperature: return "S-T";
    case PathCoords::entropy_gap: return "S-gap";
  }
  return "?";
}

CurveSeries property_vs_hotness(Property property, EnergyGap gap, HotnessRange range, std::size_t n,
                                const Constants& c, HotnessUnit unit) {
  if (n < 2) invalid("a curve needs at least 2 samples");
  if (!(std::isfinite(range.lo) && std::isfinite(range.hi) && range.lo < range.hi))
    invalid("hotness range is empty: [" + fmt_g(range.lo, 12) + ", " + fmt_g(range.hi, 12) + "]");

  const char* symbol = nullptr;
  const char* y_name = nullptr;
  switch (property) {
    case Property::energy: symbol = "E"; y_name = "E [J]"; break;
    case Property::entropy: symbol = "S"; y_name = "S [J/K]"; break;
    case Property::massieu: symbol = "M"; y_name = "M [J/K]"; break;
    case Property::temperature: invalid("temperature is not plotted against hotness");
  }

  std::vector<double> h;
  h.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = range.lo + (range.hi - range.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double v_exact = i + 1 == n ? range.hi : v;
    if (v_exact != 0.0) h.push_back(v_exact);
  }
  std::vector<double> x(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) x[i] = -gap.joules() * h[i];
  const Batch b = evaluate_batch(x);

  CurveSeries series{std::string(symbol) + " " + gap_tag(gap), hotness_axis(unit), y_name, {}};
  series.points.reserve(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double hx = unit == HotnessUnit::per_joule ? h[i] : h[i] * c.k_b;
    double y = 0.0;
    switch (property) {
      case Property::energy: y = gap.joules() * b.e[i]; break;
      case Property::entropy: y = c.k_b * b.s[i]; break;
      case Property::massieu: y = c.k_b * (b.s[i] - x[i] * b.e[i]); break;
      case Property::temperature: break;
    }
    series.points.push_back({hx, y});
  }
  return series;
}

CurveSeries property_vs_entropy(Property property, EnergyGap gap, std::size_t n, const Constants& c, XRange xr) {
  if (property != Property::energy && property != Property::temperature)
    invalid("only E and T are plotted against entropy at fixed gap");
  const std::vector<double> x = entropy_axis_grid(n, xr);
  const Batch b = evaluate_batch(x);
  const bool energy = property == Property::energy;
  CurveSeries series{std::string(energy ? "E " : "T ") + gap_tag(gap), "S [J/K]", energy ? "E [J]" : "T [K]", {}};
  series.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = energy ? gap.joules() * b.e[i] : gap.joules() / (c.k_b * x[i]);
    series.points.push_back({c.k_b * b.s[i], y});
  }
  return series;
}

CurveSeries gap_vs_entropy(Temperature t, std::size_t n, const Constants& c, XRange xr) {
  if (!t.positive()) invalid("gap_vs_entropy requires T > 0, got " + fmt_g(t.kelvin(), 12) + " K");
  const std::vector<double> x = entropy_axis_grid(n, xr);
  const Batch b = evaluate_batch(x);
  CurveSeries series{"gap T=" + fmt_g(t.kelvin(), 6) + "K", "S [J/K]", "gap [J]", {}};
  series.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) series.points.push_back({c.k_b * b.s[i], x[i] * c.k_b * t.kelvin()});
  return series;
}

std::vector<CurveSeries> cycle_path(const CarnotCycle& cycle, PathCoords coords, std::size_t n_per_leg,
                                    HotnessUnit unit) {
  const auto& k = cycle.corners;
  return trace({{"carnot 1-2", LegKind::isotherm, &k[0], &k[1]},
                {"carnot 2-3", LegKind::isoentrope, &k[1], &k[2]},
                {"carnot 3-4", LegKind::isotherm, &k[2], &k[3]},
                {"carnot 4-1", LegKind::isoentrope, &k[3], &k[0]}},
               coords, n_per_leg, unit);
}

std::vector<CurveSeries> cycle_path(const OttoCycle& cycle, PathCoords coords, std::size_t n_per_leg,
                                    HotnessUnit unit) {
  const auto& k = cycle.corners;
  return trace({{"otto 1'-2'", LegKind::isogap, &k[0], &k[1]},
                {"otto 2'-3'", LegKind::isoentrope, &k[1], &k[2]},
                {"otto 3'-4'", LegKind::isogap, &k[2], &k[3]},
                {"otto 4'-1'", LegKind::isoentrope, &k[3], &k[0]}},
               coords, n_per_leg, unit);
}

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  return std::strtod(fmt_g(v, digits).c_str(), nullptr);
}

void write_series(std::ostream& os, std::span<const CurveSeries> series, ExportFormat format, int precision) {
  if (precision < 1 || precision > 17) invalid("precision must be within [1, 17]");
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) invalid("series '" + s.label + "' contains a non-finite value");
    }
  }

  if (format == ExportFormat::csv) {
    os << "# series,x_name,y_name\n";
    for (const auto& s : series)
      os << "# " << csv_field(s.label) << ',' << csv_field(s.x_name) << ',' << csv_field(s.y_name) << '\n';
    for (const auto& s : series) {
      const std::string label = csv_field(s.label);
      for (const auto& p : s.points) os << label << ',' << fmt_g(p.x, precision) << ',' << fmt_g(p.y, precision) << '\n';
    }
    return;
  }

  // Written by hand so every number carries exactly `precision` digits.
  os << '[';
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    os << (i == 0 ? "\n" : ",\n") << "  {\"label\": " << json_string(s.label) << ", \"x_name\": " << json_string(s.x_name)
       << ", \"y_name\": " << json_string(s.y_name) << ", \"points\": [";
    for (std::size_t j = 0; j < s.points.size(); ++j) {
      if (j > 0) os << ", ";
      os << '[' << fmt_g(s.points[j].x, precision) << ", " << fmt_g(s.points[j].y, precision) << ']';
    }
    os << "]}";
  }
  os << (series.empty() ? "]\n" : "\n]\n");
}

void export_series(const std::filesystem::path& path, std::span<const CurveSeries> series, ExportFormat format,
                   int precision) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  write_series(out, series, format, precision);
  out.flush();
  if (!out) throw DomainError(ErrorKind::io, "failed writing '" + path.string() + "'");
}

std::vector<CurveSeries> parse_json_series(std::string_view text) {
  std::vector<CurveSeries> out;
  try {
    const json doc = json::parse(text);
    if (!doc.is_array()) invalid("series document must be a JSON array");
    for (const auto& item : doc) {
      CurveSeries s{item.at("label").get<std::string>(), item.at("x_name").get<std::string>(),
                    item.at("y_name").get<std::string>(), {}};
      for (const auto& p : item.at("points")) s.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      out.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    invalid(std::string("malformed series JSON: ") + e.what());
  }
  return out;
}

}  // namespace tls
