#include "tlsthermo/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tlsthermo/error.hpp"

namespace tls {

namespace {

constexpr int kMaxBisections = 200;
constexpr double kBisectionTol = 1e-14;
// Relative entropy change below which entropy_change integrates the slope.
constexpr double kShortLeg = 1e-3;

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw DomainError(kind, msg); }

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Double precision cannot represent E/gap between -1/2 + 2^-54 and -1/2 for
// |x| above ~37.4; keep the ratio in the open interval so every state has a
// physical, invertible energy.
double clamp_open_half(double r) noexcept {
  if (r <= -0.5) return std::nextafter(-0.5, 0.0);
  if (r >= 0.5) return std::nextafter(0.5, 0.0);
  return r;
}

// e^shift times the integral of dS/dx = -x p (1 - p) over [a, b], by
// 8-point Gauss-Legendre.
double slope_integral(double a, double b, double shift) noexcept {
  constexpr double kNode[4] = {0.18343464249564978, 0.525532409916329, 0.7966664774136267, 0.9602898564975362};
  constexpr double kWeight[4] = {0.36268378337836177, 0.31370664587788705, 0.22238103445337434,
                                 0.10122853629037669};
  const auto slope = [shift](double x) {
    const double u = std::exp(-x);
    return -x * std::exp(shift - x) / ((1.0 + u) * (1.0 + u));
  };
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) sum += kWeight[k] * (slope(mid - half * kNode[k]) + slope(mid + half * kNode[k]));
  return half * sum;
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::range: return "range error";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::impossible_process: return "impossible process";
    case ErrorKind::no_convergence: return "no convergence";
    case ErrorKind::io: return "i/o error";
  }
  return "unknown";
}

Constants Constants::make(double k_b, double mu_b) {
  if (!(std::isfinite(k_b) && k_b > 0.0))
    fail(ErrorKind::invalid_argument, "Boltzmann constant must be positive and finite, got " + num(k_b));
  if (!(std::isfinite(mu_b) && mu_b > 0.0))
    fail(ErrorKind::invalid_argument, "Bohr magneton must be positive and finite, got " + num(mu_b));
  return Constants{k_b, mu_b};
}

EnergyGap EnergyGap::joules(double delta) {
  if (!(std::isfinite(delta) && delta > 0.0))
    fail(ErrorKind::invalid_argument, "energy gap must be positive and finite, got " + num(delta) + " J");
  return EnergyGap(delta);
}

EnergyGap gap_from_field(double tesla, const Constants& c) {
  if (!(std::isfinite(tesla) && tesla > 0.0))
    fail(ErrorKind::invalid_argument, "magnetic field must be positive and finite, got " + num(tesla) + " T");
  return EnergyGap::joules(2.0 * c.mu_b * tesla);
}

Temperature Temperature::kelvin(double t) {
  if (t == 0.0)
    fail(ErrorKind::range, "temperature T = 0 is unrepresentable (requires a pure state)");
  if (!std::isfinite(t))
    fail(ErrorKind::range, "temperature must be finite, got " + num(t) + " K");
  return Temperature(t);
}

EquilibriumState::EquilibriumState(Temperature t, EnergyGap gap, const Constants& c)
    : t_(t), gap_(gap), c_(c), x_(gap.joules() / (c.k_b * t.kelvin())) {
  if (!std::isfinite(x_) || x_ == 0.0)
    fail(ErrorKind::range, "gap/(k_B T) = " + num(x_) + " is not a finite nonzero number");
}

EquilibriumState EquilibriumState::from_x(double x, EnergyGap gap, const Constants& c) {
  EquilibriumState s(Temperature::kelvin(gap.joules() / (c.k_b * x)), gap, c);
  s.x_ = x;
  return s;
}

bool EquilibriumState::saturated() const noexcept { return std::abs(x_) > kXMax; }

namespace dimless {

double population(double x) noexcept {
  if (x >= 0.0) {
    const double u = std::exp(-x);
    return u / (1.0 + u);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double energy_ratio(double x) noexcept { return -0.5 * std::tanh(0.5 * x); }

double entropy(double x) noexcept {
  const double a = std::abs(x);
  if (a > kXMax) return 0.0;
  const double u = std::exp(-a);
  return std::log1p(u) + a * u / (1.0 + u);
}

double entropy_change(double x_a, double x_b) noexcept {
  const double a = std::abs(x_a);
  const double b = std::abs(x_b);
  const double s_a = entropy(a);
  const double s_b = entropy(b);
  const double direct = s_b - s_a;
  if (a > kXMax || b > kXMax || std::abs(direct) > kShortLeg * std::max(s_a, s_b)) return direct;
  return slope_integral(a, b, 0.0);
}

double scaled_population(double x, double shift) noexcept { return std::exp(shift - x) / (1.0 + std::exp(-x)); }

double scaled_entropy_change(double x_a, double x_b, double shift) noexcept {
  const auto scaled = [shift](double x) {
    const double u = std::exp(-x);
    const double log_ratio = u == 0.0 ? 1.0 : std::log1p(u) / u;
    return std::exp(shift - x) * (log_ratio + x / (1.0 + u));
  };
  const double s_a = scaled(x_a);
  const double s_b = scaled(x_b);
  const double direct = s_b - s_a;
  if (std::abs(direct) > kShortLeg * std::max(s_a, s_b)) return direct;
  return slope_integral(x_a, x_b, shift);
}

double massieu(double x) noexcept { return entropy(x) - x * energy_ratio(x); }

double entropy_from_energy_ratio(double e_ratio) noexcept {
  const double p = 0.5 + e_ratio;
  const double q = 0.5 - e_ratio;
  return -(p * std::log(p) + q * std::log(q));
}

Inversion x_from_entropy(double s_over_kb) {
  const double s_max = std::numbers::ln2;
  const double s_min = entropy(kXMax);
  if (!(s_over_kb < s_max && s_over_kb > s_min)) {
    fail(ErrorKind::range, "entropy S/k_B = " + num(s_over_kb) + " outside (" + num(s_min) +
                               ", ln 2); the matching state has T = 0 or |T| = inf");
  }
  // entropy() is strictly decreasing in |x|; run the bracket down to
  // adjacent doubles, which is at least as tight as kBisectionTol.
  double lo = 0.0;
  double hi = kXMax;
  int it = 0;
  for (; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (entropy(mid) > s_over_kb)
      lo = mid;
    else
      hi = mid;
  }
  const bool exhausted = !(0.5 * (lo + hi) > lo && 0.5 * (lo + hi) < hi);
  if (!exhausted && hi - lo > kBisectionTol) {
    fail(ErrorKind::no_convergence, "entropy inversion did not converge, bracket [" + num(lo) +
                                        ", " + num(hi) + "]");
  }
  // lo may still be the excluded endpoint 0 when the target sits within one
  // rounding step of ln 2.
  double x = (lo > 0.0 && std::abs(entropy(lo) - s_over_kb) < std::abs(entropy(hi) - s_over_kb))
                 ? lo
                 : hi;
  return {x, it};
}

}  // namespace dimless

double excited_population(const EquilibriumState& s) {
  const double p = dimless::population(s.x());
  if (p >= 1.0) return std::nextafter(1.0, 0.0);
  if (p <= 0.0) return std::numeric_limits<double>::denorm_min();
  return p;
}

double mean_energy(const EquilibriumState& s) {
  const double delta = s.gap().joules();
  const double e = delta * clamp_open_half(dimless::energy_ratio(s.x()));
  const double half = 0.5 * delta;
  if (e <= -half) return std::nextafter(-half, 0.0);
  if (e >= half) return std::nextafter(half, 0.0);
  return e;
}

double entropy(const EquilibriumState& s) { return s.constants().k_b * dimless::entropy(s.x()); }

double massieu(const EquilibriumState& s) { return s.constants().k_b * dimless::massieu(s.x()); }

PropertySet properties(const EquilibriumState& s) {
  return {excited_population(s), mean_energy(s), entropy(s), massieu(s), s.saturated()};
}

double entropy_from_energy(double e, EnergyGap gap, const Constants& c) {
  const double half = 0.5 * gap.joules();
  if (!(std::abs(e) < half)) {
    fail(ErrorKind::range, "energy " + num(e) + " J outside the open interval (-gap/2, gap/2) = (" +
                               num(-half) + ", " + num(half) + ")");
  }
  return c.k_b * dimless::entropy_from_energy_ratio(clamp_open_half(e / gap.joules()));
}

Temperature temperature_from_energy(double e, EnergyGap gap, const Constants& c) {
  const double half = 0.5 * gap.joules();
  if (e == 0.0) fail(ErrorKind::range, "energy E = 0 corresponds to |T| = inf (unrepresentable)");
  if (!(std::abs(e) < half)) {
    fail(ErrorKind::range, "energy " + num(e) + " J outside the open interval (-gap/2, gap/2) = (" +
                               num(-half) + ", " + num(half) + ")");
  }
  double r = (2.0 * e) / gap.joules();
  if (r <= -1.0) r = std::nextafter(-1.0, 0.0);
  if (r >= 1.0) r = std::nextafter(1.0, 0.0);
  const double x = -2.0 * std::atanh(r);
  return Temperature::kelvin(gap.joules() / (c.k_b * x));
}

Temperature temperature_from_entropy(double s_target, EnergyGap gap, Branch branch, const Constants& c) {
  const double x = dimless::x_from_entropy(s_target / c.k_b).x;
  const double t = gap.joules() / (c.k_b * x);
  return Temperature::kelvin(branch == Branch::positive ? t : -t);
}

EnergyGap gap_from_entropy(double s_target, Temperature t, const Constants& c) {
  if (!t.positive())
    fail(ErrorKind::invalid_argument, "gap_from_entropy requires T > 0, got " + num(t.kelvin()) + " K");
  const double x = dimless::x_from_entropy(s_target / c.k_b).x;
  return EnergyGap::joules(x * c.k_b * t.kelvin());
}

std::strong_ordering compare_hotness(Temperature a, Temperature b) noexcept {
  const double ha = a.hotness();
  const double hb = b.hotness();
  if (ha < hb) return std::strong_ordering::less;
  if (ha > hb) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool is_hotter(Temperature a, Temperature b) noexcept { return compare_hotness(a, b) > 0; }

}  // namespace tls
