#pragma once

// Carnot and Otto-like cycles of the two-level system.
//
// Carnot: isotherm 1-2 at T_high, isoentrope 2-3, isotherm 3-4 at T_low,
// isoentrope 4-1. The free inputs are gap_high = gap1 and gap_low = gap3;
// gap2 = gap_low T_high/T_low and gap4 = gap_high T_low/T_high are derived.
//
// Otto: fixed-gap heating 1'-2' at gap'_high ending at T_high, isoentrope
// 2'-3', fixed-gap cooling 3'-4' at gap'_low ending at T_low, isoentrope 4'-1'.

#include <array>
#include <optional>
#include <string>

#include "tlsthermo/equilibrium.hpp"
#include "tlsthermo/processes.hpp"

namespace tls {

struct CarnotSpec {
  Temperature t_high;
  Temperature t_low;
  EnergyGap gap_high;
  EnergyGap gap_low;
};

struct CarnotCycle {
  CarnotSpec spec;
  std::array<EquilibriumState, 4> corners;  // 1, 2, 3, 4

  EnergyGap gap2() const noexcept { return corners[1].gap(); }
  EnergyGap gap4() const noexcept { return corners[3].gap(); }
};

struct OttoSpec {
  Temperature t_high;
  Temperature t_low;
  EnergyGap gap_high;  // gap'_high, legs 1'-2'
  EnergyGap gap_low;   // gap'_low, legs 3'-4'
};

struct OttoCycle {
  OttoSpec spec;
  std::array<EquilibriumState, 4> corners;  // 1', 2', 3', 4'

  /// Start of the heating leg: T_low gap'_high / gap'_low.
  Temperature t1() const noexcept { return corners[0].temperature(); }
  /// Start of the cooling leg: T_high gap'_low / gap'_high.
  Temperature t3() const noexcept { return corners[2].temperature(); }
};

enum class CycleMode { engine, refrigeration, heat_pump };
const char* to_string(CycleMode mode) noexcept;

struct LegEntry {
  std::string label;
  LegResult ledger;
};

struct CycleReport {
  CycleMode mode = CycleMode::engine;
  std::array<LegEntry, 4> legs;
  double q_in_high = 0.0;  // heat received on the high-side leg (1-2 or 1'-2')
  double q_out_low = 0.0;  // heat rejected on the low-side leg (3-4 or 3'-4')
  double w_net = 0.0;      // net work done by the system, taken as the net heat
  /// W_net/Q_high for engines; Q_low/W_in or Q_high/W_in when reversed.
  double coefficient = 0.0;
  /// The same coefficient from its closed form in the cycle inputs, where one
  /// is known.
  std::optional<double> coefficient_closed_form;
  double s_gen_total = 0.0;
  double closure_energy = 0.0;   // sum of leg d_energy
  double closure_entropy = 0.0;  // sum of leg d_entropy
};

struct BoundsReport {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
};

/// Throws DomainError(infeasible) unless 0 < T_low < T_high and
/// gap_low < gap_high T_low/T_high, naming the limiting gap.
void validate(const CarnotSpec& spec, const Constants& c = Constants::codata());
/// Throws DomainError(infeasible) unless 0 < T_low < T_high and
/// T_low/T_high < gap'_low/gap'_high < 1.
void validate(const OttoSpec& spec, const Constants& c = Constants::codata());

CarnotCycle build_carnot(const CarnotSpec& spec, const Constants& c = Constants::codata());

/// Carnot spec cycling over only three gaps: gap_low = gap_high (T_low/T_high)^2,
/// so that gap2 = gap4.
CarnotSpec three_gap_carnot(Temperature t_high, Temperature t_low, EnergyGap gap_high);

CycleReport evaluate_carnot(const CarnotCycle& cycle);

/// lower = 1 - (gap_high/gap_low)(T_low/T_high)^2, value = 1 - T_low/T_high,
/// upper = 1 - gap_low/gap_high.
BoundsReport carnot_bounds(const CarnotSpec& spec);

OttoCycle build_otto(const OttoSpec& spec, const Constants& c = Constants::codata());

/// Otto spec with (gap'_low/gap'_high)^2 = T_low/T_high, for which T1' = T3'.
OttoSpec special_otto(Temperature t_high, Temperature t_low, EnergyGap gap_high);

/// Fixed-gap legs driven by `bath_high` (1'-2') and `bath_low` (3'-4').
CycleReport evaluate_otto(const OttoCycle& cycle, Bath bath_high, Bath bath_low);
/// Baths at T_high and T_low.
CycleReport evaluate_otto(const OttoCycle& cycle);

/// lower = 1 - (T_high/T_low)(gap'_low/gap'_high)^2, value = 1 - gap'_low/gap'_high,
/// upper = 1 - T_low/T_high.
BoundsReport otto_bounds(const OttoSpec& spec);

/// Otto spec sharing corners 2 and 4 of a Carnot cycle:
/// gap'_high = max(gap2, gap4), gap'_low = min(gap2, gap4).
/// Throws DomainError(infeasible) when gap2 = gap4 or when the inscribed spec
/// violates T_low/T_high < gap'_low/gap'_high.
OttoSpec inscribe_otto(const CarnotCycle& cycle);

/// Whether the Otto cycle inscribed in a Carnot cycle with the given
/// gap_low/gap_high and T_low/T_high ratios can run in reverse between two
/// baths: false exactly inside t^(5/2) < gap_ratio < t^(3/2).
bool otto_reverse_feasible(double gap_ratio, double t_ratio);

struct InscribedTemperatures {
  double t1_over_t_high = 0.0;
  double t3_over_t_high = 0.0;
};

/// Corner temperatures T1' and T3' (in units of T_high) of the Otto cycle
/// inscribed in a Carnot cycle with the given ratios, evaluated from the
/// derived corner gaps without any feasibility checks.
InscribedTemperatures inscribed_otto_temperatures(double gap_ratio, double t_ratio);

/// Reversed Carnot cycle: every leg ledger negated.
CycleReport reverse_cycle(const CarnotCycle& cycle, CycleMode mode);

/// Reversed Otto cycle driven by a hot bath at `bath_high` <= T1' and a cold
/// bath at `bath_low` >= T3'. Throws DomainError(infeasible) when T3' > T1'.
CycleReport reverse_cycle(const OttoCycle& cycle, CycleMode mode, Bath bath_high, Bath bath_low);
/// Baths at T1' and T3'.
CycleReport reverse_cycle(const OttoCycle& cycle, CycleMode mode);

}  // namespace tls
