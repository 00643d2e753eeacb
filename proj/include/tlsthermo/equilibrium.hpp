#pragma once

// Canonical equilibrium of a two-level system with levels -gap/2 and +gap/2.
//
// Every equilibrium property depends on the temperature T and the gap only
// through x = gap / (k_B T). The `dimless` namespace holds the kernels in x;
// the typed API scales them back to SI.

#include <compare>

#include "tlsthermo/constants.hpp"

namespace tls {

class EnergyGap {
 public:
  /// Throws DomainError unless `delta` is finite and strictly positive.
  static EnergyGap joules(double delta);

  double joules() const noexcept { return delta_; }
  double ground_level() const noexcept { return -0.5 * delta_; }
  double excited_level() const noexcept { return 0.5 * delta_; }
  /// Magnetic field (tesla) of a spin-1/2 system with this gap.
  double field(const Constants& c) const noexcept { return delta_ / (2.0 * c.mu_b); }

  friend bool operator==(EnergyGap, EnergyGap) = default;

 private:
  explicit EnergyGap(double delta) noexcept : delta_(delta) {}
  double delta_;
};

/// Gap of a spin-1/2 system in a field of `tesla`: gap = 2 mu_B B.
EnergyGap gap_from_field(double tesla, const Constants& c = Constants::codata());

/// Absolute temperature in kelvin. Negative values describe population
/// inversion; zero and infinities are not representable.
class Temperature {
 public:
  static Temperature kelvin(double t);

  double kelvin() const noexcept { return t_; }
  bool positive() const noexcept { return t_ > 0.0; }
  /// -1/T in 1/K. Increases monotonically from the coldest positive
  /// temperatures, through +-infinity, to the hottest negative ones.
  double hotness() const noexcept { return -1.0 / t_; }

  friend bool operator==(Temperature, Temperature) = default;

 private:
  explicit Temperature(double t) noexcept : t_(t) {}
  double t_;
};

enum class Branch { positive, negative };

class EquilibriumState {
 public:
  EquilibriumState(Temperature t, EnergyGap gap, const Constants& c = Constants::codata());
  /// State with the given gap/(k_B T), kept bit-exact; T is derived from it.
  static EquilibriumState from_x(double x, EnergyGap gap, const Constants& c = Constants::codata());

  Temperature temperature() const noexcept { return t_; }
  EnergyGap gap() const noexcept { return gap_; }
  const Constants& constants() const noexcept { return c_; }

  /// gap / (k_B T); negative for inverted populations.
  double x() const noexcept { return x_; }
  /// -1/(k_B T) in 1/J.
  double hotness() const noexcept { return -1.0 / (c_.k_b * t_.kelvin()); }
  /// True when |x| exceeds kXMax: the entropy is clamped to zero there.
  bool saturated() const noexcept;

 private:
  Temperature t_;
  EnergyGap gap_;
  Constants c_;
  double x_;
};

struct PropertySet {
  double p = 0.0;        // excited-level population
  double energy = 0.0;   // J
  double entropy = 0.0;  // J/K
  double massieu = 0.0;  // S - E/T, J/K
  bool saturated = false;
};

double excited_population(const EquilibriumState& s);
double mean_energy(const EquilibriumState& s);
double entropy(const EquilibriumState& s);
double massieu(const EquilibriumState& s);
PropertySet properties(const EquilibriumState& s);

/// Fundamental relation S = S(E/gap). Throws unless |e| < gap/2.
double entropy_from_energy(double e, EnergyGap gap, const Constants& c = Constants::codata());

/// Closed-form inverse of mean_energy. Throws for e = 0 (T = +-inf) and for
/// |e| >= gap/2 (T = 0 or beyond).
Temperature temperature_from_energy(double e, EnergyGap gap,
                                    const Constants& c = Constants::codata());

/// Inverse of the entropy at fixed gap, on the requested temperature branch.
/// Requires 0 < s_target < k_B ln 2.
Temperature temperature_from_entropy(double s_target, EnergyGap gap, Branch branch,
                                     const Constants& c = Constants::codata());

/// Gap giving entropy `s_target` at positive temperature `t`.
EnergyGap gap_from_entropy(double s_target, Temperature t,
                           const Constants& c = Constants::codata());

/// Orders temperatures by -1/T: `less` means `a` is colder than `b`. Every
/// negative temperature is hotter than every positive one.
std::strong_ordering compare_hotness(Temperature a, Temperature b) noexcept;
bool is_hotter(Temperature a, Temperature b) noexcept;

namespace dimless {

double population(double x) noexcept;
/// E / gap = -tanh(x/2) / 2.
double energy_ratio(double x) noexcept;
/// S / k_B via ln(1 + e^-|x|) + |x| e^-|x| / (1 + e^-|x|); exactly 0 beyond kXMax.
double entropy(double x) noexcept;
/// entropy(x_b) - entropy(x_a), accurate relative to the difference itself
/// when the two entropies nearly coincide.
double entropy_change(double x_a, double x_b) noexcept;
/// population(x) * e^shift for x >= 0, without the underflow of population.
double scaled_population(double x, double shift) noexcept;
/// entropy_change(x_a, x_b) * e^shift for x_a, x_b >= 0, without the
/// saturation clamp.
double scaled_entropy_change(double x_a, double x_b, double shift) noexcept;
/// M / k_B = S/k_B - x E/gap.
double massieu(double x) noexcept;
/// S / k_B as a function of E / gap. Requires |e_ratio| < 1/2.
double entropy_from_energy_ratio(double e_ratio) noexcept;

struct Inversion {
  double x = 0.0;
  int iterations = 0;
};

/// Positive root |x| of entropy(|x|) = s_over_kb by bisection on (0, kXMax].
/// Throws DomainError (range) for s outside (entropy(kXMax), ln 2) and
/// (no_convergence) if the bracket fails to close.
Inversion x_from_entropy(double s_over_kb);

}  // namespace dimless

}  // namespace tls
