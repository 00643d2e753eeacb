#include "tlsthermo/processes.hpp"

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

void require_positive(Temperature t, const char* what) {
  if (!t.positive()) {
    throw DomainError(ErrorKind::invalid_argument,
                      std::string(what) + " requires T > 0, got " + num(t.kelvin()) + " K");
  }
}

// Negative entropy generation within the roundoff band of `scale` is reported
// as zero; anything below it is a second-law violation.
double guard_s_gen(double s_gen, double scale, ErrorKind kind, const std::string& context) {
  if (s_gen >= 0.0) return s_gen;
  if (s_gen >= -kSgenRoundoff * scale) return 0.0;
  throw DomainError(kind, context + ": entropy generation " + num(s_gen) + " J/K < 0");
}

}  // namespace

LegResult& LegResult::operator+=(const LegResult& o) noexcept {
  q_in += o.q_in;
  w_out += o.w_out;
  d_energy += o.d_energy;
  d_entropy += o.d_entropy;
  s_gen += o.s_gen;
  return *this;
}

Bath Bath::kelvin(double t_q) {
  if (!(std::isfinite(t_q) && t_q > 0.0))
    throw DomainError(ErrorKind::invalid_argument, "bath temperature must be positive and finite, got " + num(t_q) + " K");
  return Bath(t_q);
}

LegResult isotherm_reversible(Temperature t, EnergyGap gap_a, EnergyGap gap_b, const Constants& c) {
  require_positive(t, "isotherm_reversible");
  const EquilibriumState a(t, gap_a, c);
  const EquilibriumState b(t, gap_b, c);
  LegResult r;
  r.d_entropy = c.k_b * dimless::entropy_change(a.x(), b.x());
  r.d_energy = mean_energy(b) - mean_energy(a);
  r.q_in = t.kelvin() * r.d_entropy;
  r.w_out = r.q_in - r.d_energy;
  r.s_gen = 0.0;
  return r;
}

EquilibriumState isoentrope_end(const EquilibriumState& start, EnergyGap gap_b) {
  return EquilibriumState::from_x(start.x(), gap_b, start.constants());
}

LegResult isoentrope(const EquilibriumState& start, EnergyGap gap_b) {
  // E/gap is invariant, so the end energy is scaled from the start energy
  // rather than recomputed from a temperature that carries rounding.
  const double e_a = mean_energy(start);
  const double e_b = gap_b.joules() * (e_a / start.gap().joules());
  LegResult r;
  r.d_energy = e_b - e_a;
  r.w_out = e_a - e_b;
  return r;
}

LegResult isogap_with_bath(EnergyGap gap, Temperature t_a, Temperature t_b, Bath bath, const Constants& c) {
  return isogap_with_bath(EquilibriumState(t_a, gap, c), EquilibriumState(t_b, gap, c), bath);
}

LegResult isogap_with_bath(const EquilibriumState& a, const EquilibriumState& b, Bath bath) {
  const Temperature t_a = a.temperature();
  const Temperature t_b = b.temperature();
  const EnergyGap gap = a.gap();
  const Constants& c = a.constants();
  require_positive(t_a, "isogap_with_bath");
  require_positive(t_b, "isogap_with_bath");
  if (b.gap().joules() != gap.joules()) {
    throw DomainError(ErrorKind::invalid_argument, "isogap_with_bath needs equal gaps, got " + num(gap.joules()) +
                                                       " J and " + num(b.gap().joules()) + " J");
  }

  LegResult r;
  r.q_in = gap.joules() * (dimless::population(b.x()) - dimless::population(a.x()));
  r.d_energy = r.q_in;
  r.d_entropy = c.k_b * dimless::entropy_change(a.x(), b.x());
  const double exchanged = r.q_in / bath.t_q();

  const double t_max = std::max(t_a.kelvin(), t_b.kelvin());
  const double t_min = std::min(t_a.kelvin(), t_b.kelvin());
  if (r.q_in > 0.0 && bath.t_q() < t_max) {
    throw DomainError(ErrorKind::infeasible,
                      "bath at T_Q = " + num(bath.t_q()) + " K cannot heat the system to " +
                          num(t_max) + " K (heat flows in only if T_Q >= T)");
  }
  if (r.q_in < 0.0 && bath.t_q() > t_min) {
    throw DomainError(ErrorKind::infeasible,
                      "bath at T_Q = " + num(bath.t_q()) + " K cannot cool the system to " +
                          num(t_min) + " K (heat flows out only if T_Q <= T)");
  }
  const double scale = std::max({entropy(a), entropy(b),
                                 std::max(std::abs(mean_energy(a)), std::abs(mean_energy(b))) / bath.t_q()});
  r.s_gen = guard_s_gen(r.d_entropy - exchanged, scale, ErrorKind::infeasible,
                        "bath at T_Q = " + num(bath.t_q()) + " K");
  return r;
}

LegResult work_only_relaxation(const EquilibriumState& start, const EquilibriumState& end) {
  const double s_a = entropy(start);
  const double s_b = entropy(end);
  LegResult r;
  r.d_entropy = start.constants().k_b * dimless::entropy_change(start.x(), end.x());
  r.d_energy = mean_energy(end) - mean_energy(start);
  r.w_out = -r.d_energy;
  r.s_gen = guard_s_gen(r.d_entropy, std::max(s_a, s_b), ErrorKind::impossible_process,
                        "work-only relaxation requires S_end >= S_start");
  return r;
}

bool heat_only_feasible(const EquilibriumState& state, double d_gap, double d_energy, Bath bath) {
  require_positive(state.temperature(), "heat_only_feasible");
  const double e_ratio = mean_energy(state) / state.gap().joules();
  return e_ratio * d_gap <= (1.0 - state.temperature().kelvin() / bath.t_q()) * d_energy;
}

double general_leg_work(const EquilibriumState& state, double d_gap, double q_in, double s_gen, Bath bath) {
  if (s_gen < 0.0) {
    throw DomainError(ErrorKind::impossible_process,
                      "entropy generation must be nonnegative, got " + num(s_gen) + " J/K");
  }
  const double t = state.temperature().kelvin();
  const double e_ratio = mean_energy(state) / state.gap().joules();
  return -e_ratio * d_gap + (1.0 - t / bath.t_q()) * q_in - t * s_gen;
}

double heat_transfer_entropy_generation(const EquilibriumState& state, double q_in, Bath bath) {
  return q_in / state.temperature().kelvin() - q_in / bath.t_q();
}

LegResult integrate_isotherm_numerical(Temperature t, EnergyGap gap_a, EnergyGap gap_b, std::size_t n_steps,
                                       const Constants& c) {
  require_positive(t, "integrate_isotherm_numerical");
  if (n_steps < 1) throw DomainError(ErrorKind::invalid_argument, "n_steps must be at least 1");

  const double kt = c.k_b * t.kelvin();
  const double d0 = gap_a.joules();
  const double h = (gap_b.joules() - d0) / static_cast<double>(n_steps);
  // Along an isotherm T dS/dgap = x dp/dx = -x p (1 - p) and dW/dgap = -E/gap.
  auto heat_rate = [&](double delta) {
    const double x = delta / kt;
    const double p = dimless::population(x);
    return -x * p * (1.0 - p);
  };
  auto work_rate = [&](double delta) { return -dimless::energy_ratio(delta / kt); };

  double q = 0.5 * (heat_rate(d0) + heat_rate(gap_b.joules()));
  double w = 0.5 * (work_rate(d0) + work_rate(gap_b.joules()));
  for (std::size_t i = 1; i < n_steps; ++i) {
    const double delta = d0 + h * static_cast<double>(i);
    q += heat_rate(delta);
    w += work_rate(delta);
  }
  LegResult r;
  r.q_in = q * h;
  r.w_out = w * h;
  r.d_energy = r.q_in - r.w_out;
  r.d_entropy = r.q_in / t.kelvin();
  return r;
}

}  // namespace tls
