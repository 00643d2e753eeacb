#pragma once

// Finite quasi-static legs between equilibrium states of the two-level system.
//
// Sign convention: q_in is heat received by the system, w_out is work done by
// the system. Every ledger satisfies d_energy = q_in - w_out.

#include <cstddef>

#include "tlsthermo/equilibrium.hpp"

namespace tls {

struct LegResult {
  double q_in = 0.0;       // J
  double w_out = 0.0;      // J
  double d_energy = 0.0;   // J
  double d_entropy = 0.0;  // J/K
  double s_gen = 0.0;      // J/K

  /// Field-wise sum; the ledger of two consecutive legs.
  LegResult& operator+=(const LegResult& o) noexcept;
  friend LegResult operator+(LegResult a, const LegResult& b) noexcept { return a += b; }
};

/// Heat reservoir at a positive temperature.
class Bath {
 public:
  static Bath kelvin(double t_q);
  static Bath at(Temperature t) { return kelvin(t.kelvin()); }

  double t_q() const noexcept { return t_q_; }
  Temperature temperature() const { return Temperature::kelvin(t_q_); }

 private:
  explicit Bath(double t_q) noexcept : t_q_(t_q) {}
  double t_q_;
};

/// Isothermal leg at T > 0 with the gap changed from `gap_a` to `gap_b`,
/// in contact with a bath at the same temperature. s_gen is exactly zero.
LegResult isotherm_reversible(Temperature t, EnergyGap gap_a, EnergyGap gap_b,
                              const Constants& c = Constants::codata());

/// Adiabatic reversible leg: gap/T stays fixed, no heat, no entropy change.
LegResult isoentrope(const EquilibriumState& start, EnergyGap gap_b);
/// End state of isoentrope(start, gap_b): T_b = T_a gap_b / gap_a, with
/// gap/(k_B T) carried over unchanged.
EquilibriumState isoentrope_end(const EquilibriumState& start, EnergyGap gap_b);

/// Fixed-gap leg from T_a to T_b (both positive) driven by a single bath.
/// No work; the entropy generated is d_entropy - q_in/T_Q.
///
/// Heat can flow into the system only from a bath at least as hot as every
/// state the leg passes through (and out of it only to one at least as cold),
/// so a bath on the wrong side of the leg's temperature range is rejected as
/// infeasible, as is any negative entropy generation beyond roundoff.
LegResult isogap_with_bath(EnergyGap gap, Temperature t_a, Temperature t_b, Bath bath,
                           const Constants& c = Constants::codata());
/// Same leg between two given states; throws unless they share the gap.
LegResult isogap_with_bath(const EquilibriumState& a, const EquilibriumState& b, Bath bath);

/// Adiabatic leg where the entropy increase is generated internally by
/// relaxation. Throws DomainError(impossible_process) if S_end < S_start.
LegResult work_only_relaxation(const EquilibriumState& start, const EquilibriumState& end);

/// Feasibility of a small heat-only step (T > 0):
/// (E/gap) d_gap <= (1 - T/T_Q) d_energy.
bool heat_only_feasible(const EquilibriumState& state, double d_gap, double d_energy, Bath bath);

/// Work of a small step with heat `q_in` from `bath` and internal entropy
/// generation `s_gen` >= 0:
///   dW = -(E/gap) d_gap + (1 - T/T_Q) q_in - T s_gen.
double general_leg_work(const EquilibriumState& state, double d_gap, double q_in, double s_gen,
                        Bath bath);

/// Entropy generated when a small heat `q_in` crosses from a bath at T_Q to a
/// system at T and nothing else is irreversible: q_in/T - q_in/T_Q.
double heat_transfer_entropy_generation(const EquilibriumState& state, double q_in, Bath bath);

/// Numerical cross-check of isotherm_reversible: composite trapezoid rule on
/// T dS/dgap and -E/gap over `n_steps` equal gap intervals.
LegResult integrate_isotherm_numerical(Temperature t, EnergyGap gap_a, EnergyGap gap_b,
                                       std::size_t n_steps,
                                       const Constants& c = Constants::codata());

/// Relative roundoff band inside which a negative s_gen is clamped to zero.
inline constexpr double kSgenRoundoff = 1e-15;

}  // namespace tls
