#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "tlsthermo/error.hpp"
#include "tlsthermo/processes.hpp"

using namespace tls;
using doctest::Approx;

namespace {

const Constants kC = Constants::codata();

Temperature K(double t) { return Temperature::kelvin(t); }

void check_ledger(const LegResult& r) {
  const double scale = std::fmax(std::fabs(r.q_in), std::fabs(r.w_out));
  CHECK(std::fabs(r.d_energy - (r.q_in - r.w_out)) <= 1e-12 * scale);
  CHECK(r.s_gen >= -1e-15 * std::fmax(std::fabs(r.d_entropy), 1e-30));
}

}  // namespace

TEST_CASE("reversible isotherm heat") {
  const auto r = isotherm_reversible(K(600), gap_from_field(1600), gap_from_field(500));
  CHECK(r.q_in == Approx(oracle::frozen::q_isotherm_600K_1600_to_500T).epsilon(1e-13));
  const long double simpson =
      oracle::isotherm_heat_simpson(600.0L, oracle::gap_from_field(1600), oracle::gap_from_field(500), 2000);
  CHECK(r.q_in == Approx(double(simpson)).epsilon(1e-11));
  CHECK(r.s_gen == 0.0);
  CHECK(r.d_entropy * 600.0 == Approx(r.q_in).epsilon(1e-14));
  check_ledger(r);
}

TEST_CASE("numerical isotherm converges to the closed form") {
  const auto exact = isotherm_reversible(K(600), gap_from_field(1600), gap_from_field(500));
  double prev_err = 0.0;
  for (std::size_t n : {100u, 200u, 400u}) {
    const auto num = integrate_isotherm_numerical(K(600), gap_from_field(1600), gap_from_field(500), n);
    const double err = std::fabs(num.q_in - exact.q_in);
    if (prev_err > 0.0) CHECK(prev_err / err == Approx(4.0).epsilon(0.02));
    prev_err = err;
    CHECK(num.w_out == Approx(exact.w_out).epsilon(1e-3));
  }
  CHECK_THROWS_AS(integrate_isotherm_numerical(K(600), gap_from_field(1600), gap_from_field(500), 0),
                  DomainError);
}

TEST_CASE("isoentrope keeps gap/T, E/gap and S") {
  const EquilibriumState a(K(600), gap_from_field(1600));
  const EnergyGap gb = gap_from_field(800);
  const auto b = isoentrope_end(a, gb);
  CHECK(b.temperature().kelvin() == Approx(300.0).epsilon(1e-15));
  CHECK(b.x() == Approx(a.x()).epsilon(1e-15));
  const auto r = isoentrope(a, gb);
  CHECK(r.q_in == 0.0);
  CHECK(r.d_entropy == 0.0);
  CHECK(r.s_gen == 0.0);
  CHECK(r.w_out == Approx(mean_energy(a) * (1.0 - 0.5)).epsilon(1e-14));
  CHECK(r.w_out == Approx(mean_energy(a) - mean_energy(b)).epsilon(1e-14));
  check_ledger(r);
}

TEST_CASE("iso-gap leg with a bath") {
  const EnergyGap g = gap_from_field(800);
  const auto heat = isogap_with_bath(g, K(480), K(600), Bath::kelvin(600));
  CHECK(heat.w_out == 0.0);
  CHECK(heat.q_in > 0.0);
  CHECK(heat.s_gen > 0.0);
  CHECK(heat.s_gen == Approx(heat.d_entropy - heat.q_in / 600.0).epsilon(1e-14));
  check_ledger(heat);

  const auto hotter = isogap_with_bath(g, K(480), K(600), Bath::kelvin(900));
  CHECK(hotter.s_gen > heat.s_gen);

  CHECK_THROWS_AS(isogap_with_bath(g, K(480), K(600), Bath::kelvin(550)), DomainError);
  CHECK_THROWS_AS(isogap_with_bath(g, K(600), K(480), Bath::kelvin(500)), DomainError);
  const auto cool = isogap_with_bath(g, K(600), K(480), Bath::kelvin(480));
  CHECK(cool.q_in < 0.0);
  CHECK(cool.s_gen > 0.0);
  CHECK_THROWS_AS(isogap_with_bath(g, K(-480), K(600), Bath::kelvin(900)), DomainError);

  const EquilibriumState a(K(480), g), b(K(600), g);
  const auto from_states = isogap_with_bath(a, b, Bath::kelvin(600));
  CHECK(from_states.q_in == heat.q_in);
  CHECK(from_states.s_gen == heat.s_gen);
  CHECK_THROWS_AS(isogap_with_bath(a, EquilibriumState(K(600), gap_from_field(900)), Bath::kelvin(600)),
                  DomainError);
}

TEST_CASE("property: iso-gap legs never destroy entropy") {
  auto rng = oracle::rng(11);
  for (int i = 0; i < 500; ++i) {
    const EnergyGap g = gap_from_field(oracle::log_uniform(rng, 10, 5000));
    const double ta = oracle::uniform(rng, 50, 1000);
    const double tb = oracle::uniform(rng, 50, 1000);
    if (ta == tb) continue;
    const double bath = tb > ta ? oracle::uniform(rng, tb, 2000) : oracle::uniform(rng, 10, tb);
    const auto r = isogap_with_bath(g, K(ta), K(tb), Bath::kelvin(bath));
    CHECK(r.s_gen >= 0.0);
    check_ledger(r);
  }
}

TEST_CASE("work-only relaxation") {
  const EquilibriumState a(K(300), gap_from_field(800));
  const EquilibriumState b(K(600), gap_from_field(800));
  const auto r = work_only_relaxation(a, b);
  CHECK(r.q_in == 0.0);
  CHECK(r.s_gen == r.d_entropy);
  CHECK(r.s_gen > 0.0);
  check_ledger(r);
  try {
    work_only_relaxation(b, a);
    FAIL("expected impossible_process");
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::impossible_process);
  }
}

TEST_CASE("small-step relations") {
  const EquilibriumState s(K(400), gap_from_field(1000));
  const Bath hot = Bath::kelvin(500);
  const double q = 1e-24;
  CHECK(heat_transfer_entropy_generation(s, q, hot) == Approx(q / 400.0 - q / 500.0));
  CHECK(heat_transfer_entropy_generation(s, q, Bath::kelvin(400)) == 0.0);

  const double e_ratio = mean_energy(s) / s.gap().joules();
  const double dgap = 1e-23;
  CHECK(general_leg_work(s, dgap, q, 0.0, hot) == Approx(-e_ratio * dgap + 0.2 * q));
  CHECK(general_leg_work(s, dgap, q, 1e-27, hot) < general_leg_work(s, dgap, q, 0.0, hot));
  CHECK_THROWS_AS(general_leg_work(s, dgap, q, -1e-27, hot), DomainError);

  CHECK(heat_only_feasible(s, 0.0, 1e-23, hot));
  CHECK_FALSE(heat_only_feasible(s, 0.0, -1e-23, hot));
  CHECK_THROWS_AS(Bath::kelvin(0.0), DomainError);
  CHECK_THROWS_AS(Bath::kelvin(-10.0), DomainError);
}

TEST_CASE("property: Gibbs relation residual is second order") {
  auto rng = oracle::rng(12);
  for (int i = 0; i < 50; ++i) {
    const double t = oracle::uniform(rng, 50, 1500);
    const double gap = oracle::log_uniform(rng, 0.05, 20) * kC.k_b * t;
    const double dt_rel = oracle::uniform(rng, -1, 1);
    const double dg_rel = oracle::uniform(rng, -1, 1);
    auto residual = [&](double h) {
      const double tp = t * (1 + h * dt_rel), tm = t * (1 - h * dt_rel);
      const double gp = gap * (1 + h * dg_rel), gm = gap * (1 - h * dg_rel);
      const EquilibriumState sp(K(tp), EnergyGap::joules(gp));
      const EquilibriumState sm(K(tm), EnergyGap::joules(gm));
      const EquilibriumState s0(K(t), EnergyGap::joules(gap));
      const double de = mean_energy(sp) - mean_energy(sm);
      const double ds = entropy(sp) - entropy(sm);
      const double dd = gp - gm;
      return std::fabs(de - t * ds - mean_energy(s0) / gap * dd) / gap;
    };
    const double r1 = residual(1e-2);
    const double r2 = residual(5e-3);
    CHECK(std::log2(r1 / r2) > 1.9);
  }
}

TEST_CASE("LegResult sums") {
  LegResult a{1, 2, -1, 3, 0.5};
  const LegResult b{1, 1, 0, -3, 0.25};
  const LegResult c = a + b;
  CHECK(c.q_in == 2);
  CHECK(c.w_out == 3);
  CHECK(c.d_energy == -1);
  CHECK(c.d_entropy == 0);
  CHECK(c.s_gen == 0.75);
  a += b;
  CHECK(a.s_gen == 0.75);
}
