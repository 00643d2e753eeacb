#include <cmath>
#include <compare>
#include <limits>

#include "doctest.h"
#include "oracle.hpp"
#include "tlsthermo/equilibrium.hpp"
#include "tlsthermo/error.hpp"

using namespace tls;
using doctest::Approx;

namespace {

EquilibriumState state(double t, double tesla) {
  return EquilibriumState(Temperature::kelvin(t), gap_from_field(tesla));
}

EquilibriumState state_at_x(double x, double t = 600.0) {
  const double gap = std::fabs(x) * oracle::kB * std::fabs(t);
  return EquilibriumState(Temperature::kelvin(x > 0 ? t : -t), EnergyGap::joules(static_cast<double>(gap)));
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.kind();
  }
  FAIL("expected DomainError");
  return ErrorKind::io;
}

}  // namespace

TEST_CASE("gap from field") {
  CHECK(gap_from_field(1600.0).joules() == Approx(2.96768e-20).epsilon(1e-15));
  CHECK(gap_from_field(250.0).joules() == Approx(4.637e-21).epsilon(1e-15));
  CHECK(gap_from_field(500.0).joules() == 2.0 * gap_from_field(250.0).joules());
  CHECK(gap_from_field(1600.0).field(Constants::codata()) == Approx(1600.0).epsilon(1e-15));
  CHECK(kind_of([] { gap_from_field(0.0); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { gap_from_field(-1.0); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { EnergyGap::joules(std::numeric_limits<double>::infinity()); }) ==
        ErrorKind::invalid_argument);
}

TEST_CASE("levels and temperatures") {
  const EnergyGap g = EnergyGap::joules(2.0e-21);
  CHECK(g.ground_level() == -1.0e-21);
  CHECK(g.excited_level() == 1.0e-21);
  CHECK(kind_of([] { Temperature::kelvin(0.0); }) == ErrorKind::range);
  CHECK(kind_of([] { Temperature::kelvin(std::numeric_limits<double>::infinity()); }) == ErrorKind::range);
  CHECK(kind_of([] { Temperature::kelvin(std::nan("")); }) == ErrorKind::range);
  CHECK(Temperature::kelvin(-300.0).hotness() == Approx(1.0 / 300.0));
  CHECK_FALSE(Temperature::kelvin(-300.0).positive());
}

TEST_CASE("reference state 600 K, 1600 T") {
  const auto s = state(600.0, 1600.0);
  const double k = Constants::codata().k_b;
  CHECK(s.x() == Approx(oracle::frozen::x_600K_1600T).epsilon(1e-14));
  CHECK(excited_population(s) == Approx(oracle::frozen::p_600K_1600T).epsilon(1e-14));
  CHECK(mean_energy(s) == Approx(oracle::frozen::e_600K_1600T).epsilon(1e-14));
  CHECK(entropy(s) / k == Approx(oracle::frozen::s_over_k_600K_1600T).epsilon(1e-14));
  CHECK(massieu(s) / k == Approx(oracle::frozen::m_over_k_600K_1600T).epsilon(1e-14));
  CHECK(entropy(state(600.0, 500.0)) / k == Approx(oracle::frozen::s_over_k_600K_500T).epsilon(1e-14));

  const PropertySet ps = properties(s);
  CHECK(ps.p == excited_population(s));
  CHECK(ps.energy == mean_energy(s));
  CHECK(ps.entropy == entropy(s));
  CHECK(ps.massieu == massieu(s));
  CHECK_FALSE(ps.saturated);
}

TEST_CASE("x = ln 3 gives p = 1/4") {
  const double x = std::log(3.0);
  CHECK(dimless::population(x) == Approx(0.25).epsilon(1e-15));
  CHECK(dimless::entropy(x) == Approx(oracle::frozen::s_over_k_ln3).epsilon(1e-15));
  CHECK(dimless::entropy(x) == Approx(0.25 * std::log(4.0) + 0.75 * std::log(4.0 / 3.0)).epsilon(1e-15));
  CHECK(dimless::entropy_from_energy_ratio(-0.25) == Approx(oracle::frozen::s_over_k_ln3).epsilon(1e-15));
  CHECK(dimless::entropy_from_energy_ratio(0.25) == dimless::entropy_from_energy_ratio(-0.25));
  CHECK(dimless::energy_ratio(1.0) == Approx(oracle::frozen::e_ratio_x1).epsilon(1e-15));
}

TEST_CASE("limits") {
  CHECK(dimless::population(1e-9) == Approx(0.5));
  CHECK(dimless::energy_ratio(1e-9) == Approx(0.0).epsilon(1e-9));
  CHECK(dimless::entropy(1e-9) == Approx(std::log(2.0)));
  CHECK(dimless::massieu(1e-9) == Approx(std::log(2.0)));
  CHECK(dimless::entropy(800.0) == 0.0);
  CHECK(dimless::entropy(-800.0) == 0.0);
  CHECK(dimless::entropy(700.0) > 0.0);
  CHECK(entropy_from_energy(0.0, EnergyGap::joules(1e-21)) == Approx(oracle::kB * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("saturated states stay valid") {
  const auto s = state_at_x(900.0);
  CHECK(s.saturated());
  const PropertySet ps = properties(s);
  CHECK(ps.saturated);
  CHECK(ps.entropy == 0.0);
  CHECK(ps.p > 0.0);
  CHECK(std::fabs(ps.energy) < 0.5 * s.gap().joules());
}

TEST_CASE("property: matches the long double oracle over x") {
  auto g = oracle::rng(1);
  for (int i = 0; i < 2000; ++i) {
    const double x = (i % 2 ? 1.0 : -1.0) * oracle::log_uniform(g, 1e-6, 40.0);
    CHECK(oracle::rel_err(dimless::population(x), double(oracle::population(x))) < 1e-14);
    CHECK(oracle::rel_err(dimless::energy_ratio(x), double(oracle::energy_ratio(x))) < 1e-14);
    CHECK(oracle::rel_err(dimless::entropy(x), double(oracle::entropy(x))) < 1e-13);
    CHECK(oracle::rel_err(dimless::massieu(x), double(oracle::massieu(x))) < 1e-13);
  }
}

TEST_CASE("property: state invariants and symmetries") {
  auto g = oracle::rng(2);
  for (int i = 0; i < 2000; ++i) {
    const double t = oracle::uniform(g, -2000.0, 2000.0);
    if (std::fabs(t) < 1.0) continue;
    const double b = oracle::log_uniform(g, 1e-2, 1e4);
    const auto s = state(t, b);
    const double p = excited_population(s);
    const double gap = s.gap().joules();
    const double e = mean_energy(s);
    const double sk = entropy(s) / Constants::codata().k_b;
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    CHECK((p < 0.5) == (t > 0.0));
    CHECK(std::fabs(e / gap - (p - 0.5)) < 1e-14);
    CHECK(std::fabs(e) < 0.5 * gap);
    CHECK(sk > 0.0);
    CHECK(sk < std::log(2.0));

    const double x = s.x();
    CHECK(dimless::population(-x) == Approx(1.0 - dimless::population(x)).epsilon(1e-14));
    CHECK(dimless::energy_ratio(-x) == -dimless::energy_ratio(x));
    CHECK(dimless::entropy(-x) == dimless::entropy(x));

    const double s_fund = entropy_from_energy(e, s.gap());
    CHECK(std::fabs(s_fund - entropy(s)) / Constants::codata().k_b < 1e-12);
  }
}

TEST_CASE("property: entropy strictly decreasing in |x|") {
  double prev = dimless::entropy(1e-6);
  for (double x = 2e-6; x < 700.0; x *= 1.05) {
    const double cur = dimless::entropy(x);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("temperature from energy") {
  const EnergyGap gap = gap_from_field(1600.0);
  const double e = gap.joules() * oracle::frozen::e_ratio_x1;
  const Temperature t = temperature_from_energy(e, gap);
  CHECK(gap.joules() / (oracle::kB * t.kelvin()) == Approx(1.0).epsilon(1e-12));
  CHECK(temperature_from_energy(-e, gap).kelvin() < 0.0);
  CHECK(kind_of([&] { temperature_from_energy(0.0, gap); }) == ErrorKind::range);
  CHECK(kind_of([&] { temperature_from_energy(0.5 * gap.joules(), gap); }) == ErrorKind::range);
  CHECK(kind_of([&] { temperature_from_energy(-0.6 * gap.joules(), gap); }) == ErrorKind::range);
}

TEST_CASE("temperature and gap from entropy") {
  const Constants c = Constants::codata();
  const EnergyGap gap = gap_from_field(1600.0);
  const double s = oracle::frozen::s_over_k_ln3 * c.k_b;
  const Temperature tp = temperature_from_entropy(s, gap, Branch::positive);
  CHECK(gap.joules() / (c.k_b * tp.kelvin()) == Approx(std::log(3.0)).epsilon(1e-13));
  const Temperature tn = temperature_from_entropy(s, gap, Branch::negative);
  CHECK(tn.kelvin() == -tp.kelvin());

  const EnergyGap g600 = gap_from_entropy(s, Temperature::kelvin(600.0));
  CHECK(g600.joules() == Approx(std::log(3.0) * c.k_b * 600.0).epsilon(1e-13));
  const EnergyGap g300 = gap_from_entropy(s, Temperature::kelvin(300.0));
  CHECK(g300.joules() == Approx(0.5 * g600.joules()).epsilon(1e-15));

  CHECK(kind_of([&] { gap_from_entropy(c.k_b * std::log(2.0), Temperature::kelvin(600.0)); }) == ErrorKind::range);
  CHECK(kind_of([&] { temperature_from_entropy(0.0, gap, Branch::positive); }) == ErrorKind::range);
  CHECK(kind_of([&] { temperature_from_entropy(-1e-25, gap, Branch::positive); }) == ErrorKind::range);
  CHECK(kind_of([&] { gap_from_entropy(s, Temperature::kelvin(-600.0)); }) == ErrorKind::invalid_argument);
}

TEST_CASE("bisection terminates within the iteration cap") {
  const auto inv = dimless::x_from_entropy(dimless::entropy(2.5));
  CHECK(inv.x == Approx(2.5).epsilon(1e-14));
  CHECK(inv.iterations <= 200);
  CHECK(inv.iterations > 0);
}

TEST_CASE("hotness ordering") {
  const auto K = [](double t) { return Temperature::kelvin(t); };
  CHECK(is_hotter(K(600), K(300)));
  CHECK(is_hotter(K(-300), K(600)));
  CHECK(is_hotter(K(-300), K(-600)));
  CHECK_FALSE(is_hotter(K(300), K(300)));
  CHECK(compare_hotness(K(300), K(600)) == std::strong_ordering::less);
  CHECK(compare_hotness(K(-1e6), K(1e6)) == std::strong_ordering::greater);
  CHECK(compare_hotness(K(42), K(42)) == std::strong_ordering::equal);
}

TEST_CASE("constants overrides") {
  const Constants c = Constants::make(1.0e-23, 1.0e-23);
  CHECK(gap_from_field(1.0, c).joules() == 2.0e-23);
  CHECK(kind_of([] { Constants::make(0.0, 1.0); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { Constants::make(1.0, -1.0); }) == ErrorKind::invalid_argument);
  const EquilibriumState s(Temperature::kelvin(1.0), EnergyGap::joules(1.0e-23), c);
  CHECK(s.x() == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("property: entropy change keeps relative accuracy on short legs") {
  auto g = oracle::rng(3);
  for (int i = 0; i < 2000; ++i) {
    const double xa = oracle::log_uniform(g, 1e-4, 60.0);
    const double xb = xa * (1.0 + oracle::uniform(g, -1.0, 1.0) * oracle::log_uniform(g, 1e-9, 1e-1));
    const long double ref = oracle::entropy(xb) - oracle::entropy(xa);
    const double got = dimless::entropy_change(xa, -xb);
    CHECK(std::fabs(got - double(ref)) <= 1e-12 * std::fabs(double(ref)) + 1e-18 * double(oracle::entropy(xa)));
  }
  CHECK(dimless::entropy_change(2.0, 2.0) == 0.0);
  CHECK(dimless::entropy_change(1.0, 3.0) == Approx(dimless::entropy(3.0) - dimless::entropy(1.0)).epsilon(1e-15));
}

TEST_CASE("state from x keeps x exactly") {
  const auto s = EquilibriumState::from_x(0.1186912345678901, gap_from_field(193));
  CHECK(s.x() == 0.1186912345678901);
  CHECK(s.temperature().kelvin() ==
        Approx(s.gap().joules() / (Constants::codata().k_b * 0.1186912345678901)).epsilon(1e-15));
  CHECK_THROWS_AS(EquilibriumState::from_x(0.0, gap_from_field(1)), DomainError);
}

TEST_CASE("property: scaled population and entropy change match the oracle past underflow") {
  auto g = oracle::rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double xa = oracle::log_uniform(g, 1e-3, 3000.0);
    const double xb = xa * oracle::log_uniform(g, 1.0 + 1e-8, 5.0);
    const double shift = xa;
    const long double ref_p = oracle::population(xa) * std::exp(static_cast<long double>(shift));
    CHECK(oracle::rel_err(dimless::scaled_population(xa, shift), double(ref_p)) <= 1e-13);
    const long double ref_s =
        (oracle::entropy(xb) - oracle::entropy(xa)) * std::exp(static_cast<long double>(shift));
    const double got = dimless::scaled_entropy_change(xa, xb, shift);
    CHECK(std::fabs(got - double(ref_s)) <= 1e-12 * std::fabs(double(ref_s)) + 1e-18);
  }
  CHECK(dimless::scaled_population(2.0, 0.0) == Approx(dimless::population(2.0)).epsilon(1e-15));
}
