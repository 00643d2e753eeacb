#pragma once

namespace tls {

/// Physical constants used by every kernel. Values are SI.
struct Constants {
  double k_b = 1.380649e-23;  // J/K, exact since the 2019 SI redefinition
  double mu_b = 9.274e-24;    // J/T, Bohr magneton

  static constexpr Constants codata() noexcept { return {}; }

  /// Throws DomainError unless both constants are finite and positive.
  static Constants make(double k_b, double mu_b);
};

// Largest |x| = gap/(k_B T) for which exp(-|x|) is still nonzero in double
// precision. Beyond it the entropy is clamped to zero and the state is flagged
// as saturated.
inline constexpr double kXMax = 745.0;

}  // namespace tls
