#include "tlsthermo/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tlsthermo/error.hpp"

namespace tls {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

[[noreturn]] void infeasible(const std::string& msg) { throw DomainError(ErrorKind::infeasible, msg); }

void validate_temperatures(Temperature t_high, Temperature t_low) {
  if (!t_low.positive() || !(t_low.kelvin() < t_high.kelvin())) {
    infeasible("cycle requires 0 < T_low < T_high, got T_low = " + num(t_low.kelvin()) +
               " K, T_high = " + num(t_high.kelvin()) + " K");
  }
}

double ratio(Temperature lo, Temperature hi) { return lo.kelvin() / hi.kelvin(); }

LegResult negated(const LegResult& r) {
  // + 0.0 turns -0.0 into +0.0 so reversed reversible legs report s_gen = 0.
  return {-r.q_in + 0.0, -r.w_out + 0.0, -r.d_energy + 0.0, -r.d_entropy + 0.0, -r.s_gen + 0.0};
}

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

// Heats of the high- and low-side legs times e^x_min, x_min the smallest
// corner x. Ratios of these equal ratios of the heats and stay finite when
// the heats themselves underflow.
struct ScaledHeats {
  double high = 0.0;
  double low = 0.0;
  ScaledHeats operator-() const { return {-high, -low}; }
};

double min_x(const std::array<EquilibriumState, 4>& corners) {
  double x = corners[0].x();
  for (const auto& k : corners) x = std::min(x, k.x());
  return x;
}

ScaledHeats scaled_heats(const CarnotCycle& cycle) {
  const auto& k = cycle.corners;
  const double shift = min_x(k);
  const auto q = [&](const EquilibriumState& a, const EquilibriumState& b) {
    return a.constants().k_b * a.temperature().kelvin() * dimless::scaled_entropy_change(a.x(), b.x(), shift);
  };
  return {q(k[0], k[1]), q(k[2], k[3])};
}

ScaledHeats scaled_heats(const OttoCycle& cycle) {
  const auto& k = cycle.corners;
  const double shift = min_x(k);
  const auto q = [&](const EquilibriumState& a, const EquilibriumState& b) {
    return a.gap().joules() * (dimless::scaled_population(b.x(), shift) - dimless::scaled_population(a.x(), shift));
  };
  return {q(k[0], k[1]), q(k[2], k[3])};
}

CycleReport make_report(CycleMode mode, std::array<LegEntry, 4> legs, ScaledHeats heats,
                        std::optional<double> closed_form) {
  CycleReport r;
  r.mode = mode;
  r.legs = std::move(legs);
  r.q_in_high = r.legs[0].ledger.q_in;
  r.q_out_low = -r.legs[2].ledger.q_in + 0.0;
  // Over a closed cycle the net work equals the net heat received.
  for (const auto& leg : r.legs) {
    r.w_net += leg.ledger.q_in;
    r.s_gen_total += leg.ledger.s_gen;
    r.closure_energy += leg.ledger.d_energy;
    r.closure_entropy += leg.ledger.d_entropy;
  }
  const double w = heats.high + heats.low;
  switch (mode) {
    case CycleMode::engine: r.coefficient = safe_div(w, heats.high); break;
    case CycleMode::refrigeration: r.coefficient = safe_div(-heats.low, w); break;
    case CycleMode::heat_pump: r.coefficient = safe_div(heats.high, w); break;
  }
  r.coefficient_closed_form = closed_form;
  return r;
}

void require_reversed(CycleMode mode) {
  if (mode == CycleMode::engine)
    throw DomainError(ErrorKind::invalid_argument, "reverse_cycle needs refrigeration or heat_pump mode");
}

}  // namespace

const char* to_string(CycleMode mode) noexcept {
  switch (mode) {
    case CycleMode::engine: return "engine";
    case CycleMode::refrigeration: return "refrigeration";
    case CycleMode::heat_pump: return "heat_pump";
  }
  return "unknown";
}

void validate(const CarnotSpec& spec, const Constants& c) {
  validate_temperatures(spec.t_high, spec.t_low);
  const double limit = spec.gap_high.joules() * ratio(spec.t_low, spec.t_high);
  if (!(spec.gap_low.joules() < limit)) {
    const double limit_field = limit / (2.0 * c.mu_b);
    infeasible("Carnot cycle needs gap_low < gap_high * T_low/T_high = " + num(limit) + " J (B_low < " +
               num(limit_field) + " T), got gap_low = " + num(spec.gap_low.joules()) + " J (B_low = " +
               num(spec.gap_low.field(c)) + " T)");
  }
}

void validate(const OttoSpec& spec, const Constants&) {
  validate_temperatures(spec.t_high, spec.t_low);
  const double r = spec.gap_low.joules() / spec.gap_high.joules();
  const double t = ratio(spec.t_low, spec.t_high);
  if (!(r < 1.0 && r > t)) {
    infeasible("Otto cycle needs T_low/T_high < gap'_low/gap'_high < 1, got T_low/T_high = " + num(t) +
               ", gap'_low/gap'_high = " + num(r));
  }
}

CarnotCycle build_carnot(const CarnotSpec& spec, const Constants& c) {
  validate(spec, c);
  const double t_ratio = ratio(spec.t_low, spec.t_high);
  const EnergyGap gap2 = EnergyGap::joules(spec.gap_low.joules() / t_ratio);
  const EnergyGap gap4 = EnergyGap::joules(spec.gap_high.joules() * t_ratio);
  return CarnotCycle{spec,
                     {EquilibriumState(spec.t_high, spec.gap_high, c), EquilibriumState(spec.t_high, gap2, c),
                      EquilibriumState(spec.t_low, spec.gap_low, c), EquilibriumState(spec.t_low, gap4, c)}};
}

CarnotSpec three_gap_carnot(Temperature t_high, Temperature t_low, EnergyGap gap_high) {
  validate_temperatures(t_high, t_low);
  const double t = ratio(t_low, t_high);
  return CarnotSpec{t_high, t_low, gap_high, EnergyGap::joules(gap_high.joules() * t * t)};
}

CycleReport evaluate_carnot(const CarnotCycle& cycle) {
  const auto& k = cycle.corners;
  const Constants& c = k[0].constants();
  const Temperature t_high = k[0].temperature();
  const Temperature t_low = k[2].temperature();
  std::array<LegEntry, 4> legs{
      LegEntry{"1-2", isotherm_reversible(t_high, k[0].gap(), k[1].gap(), c)},
      LegEntry{"2-3", isoentrope(k[1], k[2].gap())},
      LegEntry{"3-4", isotherm_reversible(t_low, k[2].gap(), k[3].gap(), c)},
      LegEntry{"4-1", isoentrope(k[3], k[0].gap())},
  };
  return make_report(CycleMode::engine, std::move(legs), scaled_heats(cycle),
                     1.0 - t_low.kelvin() / t_high.kelvin());
}

BoundsReport carnot_bounds(const CarnotSpec& spec) {
  validate(spec);
  const double t = ratio(spec.t_low, spec.t_high);
  const double g = spec.gap_low.joules() / spec.gap_high.joules();
  return {1.0 - t * t / g, 1.0 - t, 1.0 - g};
}

OttoCycle build_otto(const OttoSpec& spec, const Constants& c) {
  validate(spec, c);
  const EquilibriumState k2(spec.t_high, spec.gap_high, c);
  const EquilibriumState k4(spec.t_low, spec.gap_low, c);
  return OttoCycle{spec, {isoentrope_end(k4, spec.gap_high), k2, isoentrope_end(k2, spec.gap_low), k4}};
}

OttoSpec special_otto(Temperature t_high, Temperature t_low, EnergyGap gap_high) {
  validate_temperatures(t_high, t_low);
  return OttoSpec{t_high, t_low, gap_high,
                  EnergyGap::joules(gap_high.joules() * std::sqrt(ratio(t_low, t_high)))};
}

CycleReport evaluate_otto(const OttoCycle& cycle, Bath bath_high, Bath bath_low) {
  const auto& k = cycle.corners;
  std::array<LegEntry, 4> legs{
      LegEntry{"1'-2'", isogap_with_bath(k[0], k[1], bath_high)},
      LegEntry{"2'-3'", isoentrope(k[1], k[2].gap())},
      LegEntry{"3'-4'", isogap_with_bath(k[2], k[3], bath_low)},
      LegEntry{"4'-1'", isoentrope(k[3], k[0].gap())},
  };
  return make_report(CycleMode::engine, std::move(legs), scaled_heats(cycle),
                     1.0 - cycle.spec.gap_low.joules() / cycle.spec.gap_high.joules());
}

CycleReport evaluate_otto(const OttoCycle& cycle) {
  return evaluate_otto(cycle, Bath::at(cycle.spec.t_high), Bath::at(cycle.spec.t_low));
}

BoundsReport otto_bounds(const OttoSpec& spec) {
  validate(spec);
  const double t = ratio(spec.t_low, spec.t_high);
  const double r = spec.gap_low.joules() / spec.gap_high.joules();
  return {1.0 - r * r / t, 1.0 - r, 1.0 - t};
}

OttoSpec inscribe_otto(const CarnotCycle& cycle) {
  const double g2 = cycle.gap2().joules();
  const double g4 = cycle.gap4().joules();
  if (std::abs(g2 - g4) <= 1e-12 * std::max(g2, g4)) {
    infeasible("cannot inscribe an Otto cycle in a three-gap Carnot cycle (gap2 = gap4 = " + num(g2) + " J)");
  }
  OttoSpec spec{cycle.spec.t_high, cycle.spec.t_low, EnergyGap::joules(std::max(g2, g4)),
                EnergyGap::joules(std::min(g2, g4))};
  validate(spec);
  return spec;
}

bool otto_reverse_feasible(double gap_ratio, double t_ratio) {
  if (!(gap_ratio > 0.0 && gap_ratio < 1.0 && t_ratio > 0.0 && t_ratio < 1.0)) {
    throw DomainError(ErrorKind::invalid_argument, "otto_reverse_feasible needs ratios in (0, 1), got gap ratio " +
                                                       num(gap_ratio) + ", temperature ratio " + num(t_ratio));
  }
  const bool in_window = std::pow(t_ratio, 2.5) < gap_ratio && gap_ratio < std::pow(t_ratio, 1.5);
  return !in_window;
}

InscribedTemperatures inscribed_otto_temperatures(double gap_ratio, double t_ratio) {
  // Gaps in units of gap_high: gap2 = gap_ratio / t_ratio, gap4 = t_ratio.
  const double g2 = gap_ratio / t_ratio;
  const double g4 = t_ratio;
  const double r = std::min(g2, g4) / std::max(g2, g4);
  return {t_ratio / r, r};
}

CycleReport reverse_cycle(const CarnotCycle& cycle, CycleMode mode) {
  require_reversed(mode);
  const CycleReport fwd = evaluate_carnot(cycle);
  std::array<LegEntry, 4> legs{
      LegEntry{"2-1", negated(fwd.legs[0].ledger)},
      LegEntry{"3-2", negated(fwd.legs[1].ledger)},
      LegEntry{"4-3", negated(fwd.legs[2].ledger)},
      LegEntry{"1-4", negated(fwd.legs[3].ledger)},
  };
  const double th = cycle.corners[0].temperature().kelvin();
  const double tl = cycle.corners[2].temperature().kelvin();
  const double closed = mode == CycleMode::refrigeration ? tl / (th - tl) : th / (th - tl);
  return make_report(mode, std::move(legs), -scaled_heats(cycle), closed);
}

CycleReport reverse_cycle(const OttoCycle& cycle, CycleMode mode, Bath bath_high, Bath bath_low) {
  require_reversed(mode);
  const double t1 = cycle.t1().kelvin();
  const double t3 = cycle.t3().kelvin();
  if (t3 > t1) {
    infeasible("Otto cycle cannot run in reverse between two baths: T3' = " + num(t3) + " K > T1' = " +
               num(t1) + " K (hot bath must be at most T1', cold bath at least T3')");
  }
  const auto& k = cycle.corners;
  std::array<LegEntry, 4> legs{
      LegEntry{"2'-1'", isogap_with_bath(k[1], k[0], bath_high)},
      LegEntry{"3'-2'", isoentrope(k[2], k[1].gap())},
      LegEntry{"4'-3'", isogap_with_bath(k[3], k[2], bath_low)},
      LegEntry{"1'-4'", isoentrope(k[0], k[3].gap())},
  };
  return make_report(mode, std::move(legs), -scaled_heats(cycle), std::nullopt);
}

CycleReport reverse_cycle(const OttoCycle& cycle, CycleMode mode) {
  return reverse_cycle(cycle, mode, Bath::at(cycle.t1()), Bath::at(cycle.t3()));
}

}  // namespace tls
