#include "tlsthermo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tlsthermo/cycles.hpp"
#include "tlsthermo/diagrams.hpp"
#include "tlsthermo/equilibrium.hpp"
#include "tlsthermo/error.hpp"
#include "tlsthermo/processes.hpp"

namespace tls::cli {

namespace {

// Thrown for argument combinations CLI11 cannot express; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Tabular reports rendered as aligned text, CSV or JSON.

enum class Dim { none, kelvin, tesla, energy, entropy, hotness };

struct Column {
  std::string name;
  Dim dim = Dim::none;
};

using Cell = std::variant<std::monostate, std::string, double, bool>;

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::string command;
  std::vector<Table> tables;
};

std::string unit_label(Dim dim, Units units) {
  const bool si = units == Units::si;
  switch (dim) {
    case Dim::none: return "";
    case Dim::kelvin: return "K";
    case Dim::tesla: return "T";
    case Dim::energy: return si ? "J" : "K";
    case Dim::entropy: return si ? "J/K" : "1";
    case Dim::hotness: return si ? "1/J" : "1/K";
  }
  return "";
}

// Reduced units set k_B = 1: energies in kelvin, entropies dimensionless,
// hotness as -1/T.
double scaled(double v, Dim dim, const RunConfig& cfg) {
  if (cfg.units == Units::si) return v;
  switch (dim) {
    case Dim::energy:
    case Dim::entropy: return v / cfg.constants.k_b;
    case Dim::hotness: return v * cfg.constants.k_b;
    default: return v;
  }
}

std::string fmt_num(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string cell_text(const Cell& cell, const Column& col, const RunConfig& cfg, bool csv) {
  if (std::holds_alternative<std::monostate>(cell)) return csv ? "" : "n/a";
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* b = std::get_if<bool>(&cell)) return *b ? "true" : "false";
  return fmt_num(scaled(std::get<double>(cell), col.dim, cfg), cfg.precision);
}

std::string header_text(const Column& col, Units units) {
  const std::string u = unit_label(col.dim, units);
  return u.empty() ? col.name : col.name + " [" + u + "]";
}

void render_table(std::ostream& os, const Report& report, const RunConfig& cfg) {
  bool first = true;
  for (const auto& t : report.tables) {
    if (!first) os << '\n';
    first = false;
    os << '[' << t.name << "]\n";
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header;
    for (const auto& c : t.columns) header.push_back(header_text(c, cfg.units));
    grid.push_back(header);
    for (const auto& row : t.rows) {
      std::vector<std::string> line;
      for (std::size_t i = 0; i < row.size(); ++i) line.push_back(cell_text(row[i], t.columns[i], cfg, false));
      grid.push_back(std::move(line));
    }
    std::vector<std::size_t> width(t.columns.size(), 0);
    for (const auto& line : grid)
      for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    for (const auto& line : grid) {
      std::string text;
      for (std::size_t i = 0; i < line.size(); ++i) {
        text += line[i];
        if (i + 1 < line.size()) text += std::string(width[i] - line[i].size() + 2, ' ');
      }
      os << text << '\n';
    }
  }
}

void render_csv(std::ostream& os, const Report& report, const RunConfig& cfg) {
  for (const auto& t : report.tables) {
    os << "# " << t.name << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << header_text(t.columns[i], cfg.units);
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i], t.columns[i], cfg, true);
      os << '\n';
    }
  }
}

void render_json(std::ostream& os, const Report& report, const RunConfig& cfg) {
  using ojson = nlohmann::ordered_json;
  ojson doc;
  doc["command"] = report.command;
  doc["units"] = cfg.units == Units::si ? "si" : "reduced";
  ojson tables = ojson::object();
  for (const auto& t : report.tables) {
    ojson cols = ojson::array();
    ojson units = ojson::array();
    for (const auto& c : t.columns) {
      cols.push_back(c.name);
      units.push_back(unit_label(c.dim, cfg.units));
    }
    ojson rows = ojson::array();
    for (const auto& row : t.rows) {
      ojson r = ojson::array();
      for (std::size_t i = 0; i < row.size(); ++i) {
        const Cell& cell = row[i];
        if (std::holds_alternative<std::monostate>(cell))
          r.push_back(nullptr);
        else if (const auto* s = std::get_if<std::string>(&cell))
          r.push_back(*s);
        else if (const auto* b = std::get_if<bool>(&cell))
          r.push_back(*b);
        else
          r.push_back(round_significant(scaled(std::get<double>(cell), t.columns[i].dim, cfg), cfg.precision));
      }
      rows.push_back(std::move(r));
    }
    tables[t.name] = ojson{{"columns", cols}, {"units", units}, {"rows", rows}};
  }
  doc["tables"] = std::move(tables);
  os << doc.dump(2) << '\n';
}

void render(std::ostream& os, const Report& report, const RunConfig& cfg) {
  switch (cfg.format) {
    case OutputFormat::table: render_table(os, report, cfg); break;
    case OutputFormat::csv: render_csv(os, report, cfg); break;
    case OutputFormat::json: render_json(os, report, cfg); break;
  }
}

// ---------------------------------------------------------------------------
// Shared report fragments.

Table corner_table(const std::array<EquilibriumState, 4>& corners, const std::array<const char*, 4>& names) {
  Table t{"corners",
          {{"corner"}, {"T", Dim::kelvin}, {"B", Dim::tesla}, {"gap", Dim::energy}, {"S", Dim::entropy}, {"E", Dim::energy}},
          {}};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& s = corners[i];
    t.rows.push_back({std::string(names[i]), s.temperature().kelvin(), s.gap().field(s.constants()),
                      s.gap().joules(), entropy(s), mean_energy(s)});
  }
  return t;
}

Table leg_table(const CycleReport& r) {
  Table t{"legs",
          {{"leg"}, {"Q_in", Dim::energy}, {"W_out", Dim::energy}, {"dE", Dim::energy}, {"dS", Dim::entropy},
           {"S_gen", Dim::entropy}},
          {}};
  for (const auto& leg : r.legs) {
    t.rows.push_back({leg.label, leg.ledger.q_in, leg.ledger.w_out, leg.ledger.d_energy, leg.ledger.d_entropy,
                      leg.ledger.s_gen});
  }
  return t;
}

Table summary_table(const CycleReport& r, std::optional<double> carnot_reference) {
  Table t{"summary",
          {{"mode"}, {"Q_high", Dim::energy}, {"Q_low", Dim::energy}, {"W_net", Dim::energy}, {"coefficient"},
           {"coefficient_closed_form"}, {"S_gen_total", Dim::entropy}, {"closure_E", Dim::energy},
           {"closure_S", Dim::entropy}},
          {}};
  std::vector<Cell> row{std::string(to_string(r.mode)), r.q_in_high, r.q_out_low, r.w_net, r.coefficient,
                        r.coefficient_closed_form ? Cell{*r.coefficient_closed_form} : Cell{},
                        r.s_gen_total, r.closure_energy, r.closure_entropy};
  if (carnot_reference) {
    t.columns.push_back({"carnot_coefficient"});
    row.push_back(*carnot_reference);
  }
  t.rows.push_back(std::move(row));
  return t;
}

Table bounds_table(const BoundsReport& b) {
  return Table{"bounds", {{"lower"}, {"value"}, {"upper"}}, {{b.lower, b.value, b.upper}}};
}

CycleMode parse_mode(const std::string& mode) {
  return mode == "heat-pump" ? CycleMode::heat_pump : CycleMode::refrigeration;
}

OutputFormat parse_format(const std::string& f) {
  if (f == "csv") return OutputFormat::csv;
  if (f == "json") return OutputFormat::json;
  return OutputFormat::table;
}

EnergyGap gap_input(double value, bool joules, const Constants& c) {
  return joules ? EnergyGap::joules(value) : gap_from_field(value, c);
}

// ---------------------------------------------------------------------------
// Subcommands.

struct PropsArgs {
  double temp = 0.0;
  std::optional<double> field;
  std::optional<double> gap;
  std::string format = "table";
};

Report cmd_props(const PropsArgs& a, const RunConfig& cfg) {
  if (a.field.has_value() == a.gap.has_value()) throw UsageError("props needs exactly one of --field or --gap");
  const Constants& c = cfg.constants;
  const EnergyGap gap = a.field ? gap_from_field(*a.field, c) : EnergyGap::joules(*a.gap);
  const EquilibriumState s(Temperature::kelvin(a.temp), gap, c);
  const PropertySet p = properties(s);
  Report r{"props", {}};
  r.tables.push_back(Table{"state",
                           {{"T", Dim::kelvin}, {"B", Dim::tesla}, {"gap", Dim::energy}, {"x"}, {"hotness", Dim::hotness}},
                           {{s.temperature().kelvin(), gap.field(c), gap.joules(), s.x(), s.hotness()}}});
  r.tables.push_back(Table{"properties",
                           {{"p"}, {"E", Dim::energy}, {"S", Dim::entropy}, {"M", Dim::entropy}, {"saturated"}},
                           {{p.p, p.energy, p.entropy, p.massieu, p.saturated}}});
  return r;
}

struct CarnotArgs {
  double t_high = 0.0;
  double t_low = 0.0;
  double b_high = 0.0;
  std::optional<double> b_low;
  bool three_gap = false;
  bool gap_joules = false;
  bool reverse = false;
  std::string mode = "refrigeration";
  bool bounds = false;
  std::string format = "table";
};

CarnotSpec carnot_spec(double t_high, double t_low, double b_high, std::optional<double> b_low, bool three_gap,
                       bool joules, const Constants& c) {
  const Temperature th = Temperature::kelvin(t_high);
  const Temperature tl = Temperature::kelvin(t_low);
  const EnergyGap gh = gap_input(b_high, joules, c);
  if (three_gap) return three_gap_carnot(th, tl, gh);
  if (!b_low) throw UsageError("Carnot cycle needs --b-low or --three-gap");
  return CarnotSpec{th, tl, gh, gap_input(*b_low, joules, c)};
}

Report cmd_carnot(const CarnotArgs& a, const RunConfig& cfg) {
  const Constants& c = cfg.constants;
  const CarnotSpec spec = carnot_spec(a.t_high, a.t_low, a.b_high, a.b_low, a.three_gap, a.gap_joules, c);
  const CarnotCycle cycle = build_carnot(spec, c);
  const CycleReport rep = a.reverse ? reverse_cycle(cycle, parse_mode(a.mode)) : evaluate_carnot(cycle);

  Report r{"carnot", {}};
  r.tables.push_back(Table{"spec",
                           {{"T_high", Dim::kelvin}, {"T_low", Dim::kelvin}, {"B_high", Dim::tesla}, {"B_low", Dim::tesla},
                            {"gap_high", Dim::energy}, {"gap_low", Dim::energy}},
                           {{spec.t_high.kelvin(), spec.t_low.kelvin(), spec.gap_high.field(c), spec.gap_low.field(c),
                             spec.gap_high.joules(), spec.gap_low.joules()}}});
  r.tables.push_back(corner_table(cycle.corners, {"1", "2", "3", "4"}));
  r.tables.push_back(leg_table(rep));
  r.tables.push_back(summary_table(rep, std::nullopt));
  if (a.bounds) r.tables.push_back(bounds_table(carnot_bounds(spec)));
  return r;
}

struct OttoArgs {
  double t_high = 0.0;
  double t_low = 0.0;
  std::optional<double> bp_high;
  std::optional<double> bp_low;
  bool inscribe = false;
  std::optional<double> b_high;
  std::optional<double> b_low;
  bool special = false;
  std::optional<double> bath_high;
  std::optional<double> bath_low;
  bool gap_joules = false;
  bool reverse = false;
  std::string mode = "refrigeration";
  bool bounds = false;
  std::string format = "table";
};

constexpr double kDefaultSpecialField = 1600.0;  // tesla

Report cmd_otto(const OttoArgs& a, const RunConfig& cfg) {
  const Constants& c = cfg.constants;
  const int sources = int(a.inscribe) + int(a.special) + int(a.bp_low.has_value());
  if (sources != 1)
    throw UsageError("otto needs exactly one of --bp-high/--bp-low, --inscribe-from or --special");

  const Temperature th = Temperature::kelvin(a.t_high);
  const Temperature tl = Temperature::kelvin(a.t_low);
  std::optional<CarnotCycle> carnot;
  OttoSpec spec = [&] {
    if (a.inscribe) {
      if (!a.b_high || !a.b_low) throw UsageError("--inscribe-from needs the Carnot gaps --b-high and --b-low");
      carnot = build_carnot(carnot_spec(a.t_high, a.t_low, *a.b_high, a.b_low, false, a.gap_joules, c), c);
      return inscribe_otto(*carnot);
    }
    if (a.special) {
      const double high = a.bp_high.value_or(a.gap_joules ? 2.0 * c.mu_b * kDefaultSpecialField : kDefaultSpecialField);
      return special_otto(th, tl, gap_input(high, a.gap_joules, c));
    }
    if (!a.bp_high) throw UsageError("otto needs --bp-high together with --bp-low");
    return OttoSpec{th, tl, gap_input(*a.bp_high, a.gap_joules, c), gap_input(*a.bp_low, a.gap_joules, c)};
  }();
  const OttoCycle cycle = build_otto(spec, c);

  CycleReport rep;
  Bath bath_high = Bath::kelvin(a.bath_high.value_or(a.reverse ? cycle.t1().kelvin() : a.t_high));
  Bath bath_low = Bath::kelvin(a.bath_low.value_or(a.reverse ? cycle.t3().kelvin() : a.t_low));
  if (a.reverse) {
    if (carnot) {
      const double gap_ratio = carnot->spec.gap_low.joules() / carnot->spec.gap_high.joules();
      const double t_ratio = a.t_low / a.t_high;
      if (!otto_reverse_feasible(gap_ratio, t_ratio)) {
        throw DomainError(ErrorKind::infeasible,
                          "inscribed Otto cycle cannot run in reverse: gap_low/gap_high = " + fmt_num(gap_ratio, 12) +
                              " lies inside ((T_low/T_high)^(5/2), (T_low/T_high)^(3/2)) = (" +
                              fmt_num(std::pow(t_ratio, 2.5), 12) + ", " + fmt_num(std::pow(t_ratio, 1.5), 12) +
                              "), where T3' > T1'");
      }
    }
    rep = reverse_cycle(cycle, parse_mode(a.mode), bath_high, bath_low);
  } else {
    rep = evaluate_otto(cycle, bath_high, bath_low);
  }

  Report r{"otto", {}};
  r.tables.push_back(Table{"spec",
                           {{"T_high", Dim::kelvin}, {"T_low", Dim::kelvin}, {"B'_high", Dim::tesla}, {"B'_low", Dim::tesla},
                            {"gap'_high", Dim::energy}, {"gap'_low", Dim::energy}, {"T1'", Dim::kelvin},
                            {"T3'", Dim::kelvin}, {"bath_high", Dim::kelvin}, {"bath_low", Dim::kelvin}},
                           {{spec.t_high.kelvin(), spec.t_low.kelvin(), spec.gap_high.field(c), spec.gap_low.field(c),
                             spec.gap_high.joules(), spec.gap_low.joules(), cycle.t1().kelvin(), cycle.t3().kelvin(),
                             bath_high.t_q(), bath_low.t_q()}}});
  if (carnot) {
    const double gap_ratio = carnot->spec.gap_low.joules() / carnot->spec.gap_high.joules();
    r.tables.push_back(Table{"carnot",
                             {{"B_high", Dim::tesla}, {"B_low", Dim::tesla}, {"B2", Dim::tesla}, {"B4", Dim::tesla},
                              {"reverse_feasible"}},
                             {{carnot->spec.gap_high.field(c), carnot->spec.gap_low.field(c), carnot->gap2().field(c),
                               carnot->gap4().field(c), otto_reverse_feasible(gap_ratio, a.t_low / a.t_high)}}});
  }
  r.tables.push_back(corner_table(cycle.corners, {"1'", "2'", "3'", "4'"}));
  r.tables.push_back(leg_table(rep));
  r.tables.push_back(summary_table(rep, 1.0 - a.t_low / a.t_high));
  if (a.bounds) r.tables.push_back(bounds_table(otto_bounds(spec)));
  return r;
}

struct DiagramArgs {
  std::string panel;
  std::string custom;
  std::string out;
  std::string format = "csv";
  std::size_t samples = kDefaultCurveSamples;
  std::size_t leg_samples = kDefaultLegSamples;
  std::string hotness_unit = "joule";
  double t_high = 600.0;
  double t_low = 300.0;
  double b_high = 1600.0;
  double b_low = 250.0;
};

std::string field_label(EnergyGap gap, const Constants& c) { return "B=" + fmt_num(gap.field(c), 6) + "T"; }

void append(std::vector<CurveSeries>& dst, std::vector<CurveSeries> src) {
  for (auto& s : src) dst.push_back(std::move(s));
}

void diagram_paths(std::vector<CurveSeries>& out, const CarnotCycle& carnot, const OttoCycle& otto,
                   std::initializer_list<PathCoords> coords, std::size_t leg_samples, HotnessUnit unit) {
  for (PathCoords pc : coords) {
    append(out, cycle_path(carnot, pc, leg_samples, unit));
    append(out, cycle_path(otto, pc, leg_samples, unit));
  }
}

int cmd_diagram(const DiagramArgs& a, const RunConfig& cfg, std::ostream& out) {
  if (a.panel.empty() == a.custom.empty()) throw UsageError("diagram needs exactly one of --panel or --custom");
  const Constants& c = cfg.constants;
  const HotnessUnit unit = a.hotness_unit == "kelvin" ? HotnessUnit::per_kelvin : HotnessUnit::per_joule;

  // Panels a/b use the 1600/250 T Carnot cycle, c/d the 1600/500 T one, both
  // between 600 K and 300 K.
  double b_low = a.b_low;
  double t_high = a.t_high;
  double t_low = a.t_low;
  double b_high = a.b_high;
  if (!a.panel.empty()) {
    t_high = 600.0;
    t_low = 300.0;
    b_high = 1600.0;
    b_low = (a.panel == "a" || a.panel == "b") ? 250.0 : 500.0;
  }
  const CarnotCycle carnot = build_carnot(carnot_spec(t_high, t_low, b_high, b_low, false, false, c), c);
  const OttoCycle otto = build_otto(inscribe_otto(carnot), c);

  std::vector<CurveSeries> series;
  if (!a.custom.empty()) {
    const auto coords = parse_path_coords(a.custom);
    if (!coords) throw UsageError("unknown --custom coordinates '" + a.custom + "' (use h,E h,S h,M S,E S,T S,gap)");
    diagram_paths(series, carnot, otto, {*coords}, a.leg_samples, unit);
  } else {
    const std::array<EnergyGap, 4> gaps{carnot.corners[0].gap(), carnot.corners[1].gap(), carnot.corners[2].gap(),
                                        carnot.corners[3].gap()};
    const bool hotness_panel = a.panel == "a" || a.panel == "c";
    if (hotness_panel) {
      // Symmetric about h = 0 to show the negative-temperature branch; reaches
      // 10% beyond the coldest cycle temperature.
      const double h_max = 1.1 / (c.k_b * t_low);
      for (Property prop : {Property::energy, Property::entropy, Property::massieu}) {
        for (EnergyGap g : gaps) {
          CurveSeries s = property_vs_hotness(prop, g, {-h_max, h_max}, a.samples, c, unit);
          s.label = s.label.substr(0, 1) + " " + field_label(g, c);
          series.push_back(std::move(s));
        }
      }
      diagram_paths(series, carnot, otto,
                    {PathCoords::hotness_energy, PathCoords::hotness_entropy, PathCoords::hotness_massieu},
                    a.leg_samples, unit);
    } else {
      for (Property prop : {Property::energy, Property::temperature}) {
        for (EnergyGap g : gaps) {
          CurveSeries s = property_vs_entropy(prop, g, a.samples, c);
          s.label = s.label.substr(0, 1) + " " + field_label(g, c);
          series.push_back(std::move(s));
        }
      }
      for (Temperature t : {carnot.spec.t_high, carnot.spec.t_low, otto.t1(), otto.t3()})
        series.push_back(gap_vs_entropy(t, a.samples, c));
      diagram_paths(series, carnot, otto,
                    {PathCoords::entropy_energy, PathCoords::entropy_temperature, PathCoords::entropy_gap},
                    a.leg_samples, unit);
    }
  }

  const ExportFormat format = a.format == "json" ? ExportFormat::json : ExportFormat::csv;
  export_series(a.out, series, format, cfg.precision);
  std::size_t points = 0;
  for (const auto& s : series) points += s.points.size();
  out << "wrote " << series.size() << " series (" << points << " points) to " << a.out << '\n';
  return kExitOk;
}

std::optional<double> env_double(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const double d = std::strtod(v, &end);
  if (end == v || *end != '\0') throw UsageError(std::string(name) + " is not a number: '" + v + "'");
  return d;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium thermodynamics and Carnot/Otto cycles of a two-level system", "tlsthermo"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string units = "si";
  int precision = 12;
  std::optional<double> k_b_flag;
  std::optional<double> mu_b_flag;
  app.add_option("--units", units, "si or reduced (k_B = 1, energies in kelvin)")
      ->check(CLI::IsMember({"si", "reduced"}));
  app.add_option("--precision", precision, "significant digits in numeric output")->check(CLI::Range(6, 17));
  app.add_option("--k-b", k_b_flag, "override the Boltzmann constant, J/K")->check(CLI::PositiveNumber);
  app.add_option("--mu-b", mu_b_flag, "override the Bohr magneton, J/T")->check(CLI::PositiveNumber);

  const auto formats = CLI::IsMember({"table", "csv", "json"});

  PropsArgs pa;
  auto* props = app.add_subcommand("props", "equilibrium properties of one state");
  props->add_option("--temp", pa.temp, "temperature, K (may be negative)")->required();
  auto* field_opt = props->add_option("--field", pa.field, "magnetic field, T");
  props->add_option("--gap", pa.gap, "energy gap, J")->excludes(field_opt);
  props->add_option("--format", pa.format)->check(formats);

  CarnotArgs ca;
  auto* carnot = app.add_subcommand("carnot", "build and evaluate a Carnot cycle");
  carnot->add_option("--t-high", ca.t_high, "hot isotherm, K")->required();
  carnot->add_option("--t-low", ca.t_low, "cold isotherm, K")->required();
  carnot->add_option("--b-high", ca.b_high, "gap at corner 1 (tesla, or J with --gap-joules)")->required();
  auto* c_blow = carnot->add_option("--b-low", ca.b_low, "gap at corner 3 (tesla, or J with --gap-joules)");
  carnot->add_flag("--three-gap", ca.three_gap, "choose gap_low so that gap2 = gap4")->excludes(c_blow);
  carnot->add_flag("--gap-joules", ca.gap_joules, "read gaps in joules instead of tesla");
  carnot->add_flag("--reverse", ca.reverse, "run as refrigerator or heat pump");
  carnot->add_option("--mode", ca.mode, "reversed mode")->check(CLI::IsMember({"refrigeration", "heat-pump"}));
  carnot->add_flag("--bounds", ca.bounds, "print the coefficient bounds");
  carnot->add_option("--format", ca.format)->check(formats);

  OttoArgs oa;
  auto* otto = app.add_subcommand("otto", "build and evaluate an Otto-like cycle");
  otto->add_option("--t-high", oa.t_high, "K")->required();
  otto->add_option("--t-low", oa.t_low, "K")->required();
  otto->add_option("--bp-high", oa.bp_high, "gap of legs 1'-2'");
  otto->add_option("--bp-low", oa.bp_low, "gap of legs 3'-4'");
  otto->add_flag("--inscribe-from", oa.inscribe, "inscribe in the Carnot cycle given by --b-high/--b-low");
  otto->add_option("--b-high", oa.b_high, "Carnot gap at corner 1 (with --inscribe-from)");
  otto->add_option("--b-low", oa.b_low, "Carnot gap at corner 3 (with --inscribe-from)");
  otto->add_flag("--special", oa.special, "gap ratio sqrt(T_low/T_high), so T1' = T3'");
  otto->add_option("--bath-high", oa.bath_high, "hot bath, K");
  otto->add_option("--bath-low", oa.bath_low, "cold bath, K");
  otto->add_flag("--gap-joules", oa.gap_joules, "read gaps in joules instead of tesla");
  otto->add_flag("--reverse", oa.reverse, "run as refrigerator or heat pump");
  otto->add_option("--mode", oa.mode, "reversed mode")->check(CLI::IsMember({"refrigeration", "heat-pump"}));
  otto->add_flag("--bounds", oa.bounds, "print the coefficient bounds");
  otto->add_option("--format", oa.format)->check(formats);

  DiagramArgs da;
  auto* diagram = app.add_subcommand("diagram", "export curve families and cycle paths");
  auto* panel_opt = diagram->add_option("--panel", da.panel, "figure panel")->check(CLI::IsMember({"a", "b", "c", "d"}));
  diagram->add_option("--custom", da.custom, "cycle paths only, in coordinates h,E h,S h,M S,E S,T or S,gap")
      ->excludes(panel_opt);
  diagram->add_option("--out", da.out, "output file")->required();
  diagram->add_option("--format", da.format)->check(CLI::IsMember({"csv", "json"}));
  diagram->add_option("--samples", da.samples, "samples per curve")->check(CLI::Range(2, 1000000));
  diagram->add_option("--leg-samples", da.leg_samples, "samples per cycle leg")->check(CLI::Range(2, 1000000));
  diagram->add_option("--hotness-unit", da.hotness_unit, "joule: -1/(k_B T); kelvin: -1/T")
      ->check(CLI::IsMember({"joule", "kelvin"}));
  diagram->add_option("--t-high", da.t_high, "K (with --custom)");
  diagram->add_option("--t-low", da.t_low, "K (with --custom)");
  diagram->add_option("--b-high", da.b_high, "T (with --custom)");
  diagram->add_option("--b-low", da.b_low, "T (with --custom)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    RunConfig cfg;
    cfg.units = units == "reduced" ? Units::reduced : Units::si;
    cfg.precision = precision;
    const double k_b = k_b_flag.value_or(env_double(kEnvBoltzmann).value_or(cfg.constants.k_b));
    const double mu_b = mu_b_flag.value_or(env_double(kEnvBohrMagneton).value_or(cfg.constants.mu_b));
    try {
      cfg.constants = Constants::make(k_b, mu_b);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }

    if (*props) {
      cfg.format = parse_format(pa.format);
      render(out, cmd_props(pa, cfg), cfg);
    } else if (*carnot) {
      cfg.format = parse_format(ca.format);
      render(out, cmd_carnot(ca, cfg), cfg);
    } else if (*otto) {
      cfg.format = parse_format(oa.format);
      render(out, cmd_otto(oa, cfg), cfg);
    } else if (*diagram) {
      return cmd_diagram(da, cfg, out);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace tls::cli
