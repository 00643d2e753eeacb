#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "tlsthermo/equilibrium.hpp"
#include "tlsthermo/error.hpp"
#include "tlsthermo/kernels.hpp"

using namespace tls;
using namespace tls::kernels;

namespace {

struct Out {
  explicit Out(std::size_t n) : p(n), e(n), s(n) {}
  PropertyBatch batch() { return {p, e, s}; }
  std::vector<double> p, e, s;
};

std::vector<double> sample_x(std::size_t n, std::uint64_t seed, double lo, double hi) {
  auto g = oracle::rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = (oracle::uniform(g, 0, 1) < 0.5 ? -1.0 : 1.0) * oracle::log_uniform(g, lo, hi);
  return x;
}

}  // namespace

TEST_CASE("scalar batch equals the dimensionless functions") {
  const auto x = sample_x(257, 31, 1e-8, 800);
  Out out(x.size());
  evaluate(Isa::scalar, x, out.batch());
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(out.p[i] == dimless::population(x[i]));
    CHECK(out.e[i] == dimless::energy_ratio(x[i]));
    CHECK(out.s[i] == dimless::entropy(x[i]));
  }
}

TEST_CASE("AVX2 matches the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("AVX2 not available on this host; equivalence test skipped");
    return;
  }
  for (auto [lo, hi] : {std::pair{1e-10, 1e-3}, std::pair{1e-3, 1.0}, std::pair{0.3, 0.4},
                        std::pair{1.0, 40.0}, std::pair{40.0, 745.0}, std::pair{1e-8, 900.0}}) {
    // odd length exercises the scalar tail
    const auto x = sample_x(4099, 32, lo, hi);
    Out ref(x.size()), simd(x.size());
    evaluate(Isa::scalar, x, ref.batch());
    evaluate(Isa::avx2, x, simd.batch());
    for (std::size_t i = 0; i < x.size(); ++i) {
      INFO("x = ", x[i]);
      CHECK(oracle::rel_err(simd.p[i], ref.p[i]) <= 1e-14);
      CHECK(oracle::rel_err(simd.e[i], ref.e[i]) <= 1e-14);
      CHECK(oracle::rel_err(simd.s[i], ref.s[i]) <= 1e-13);
      CHECK(std::fabs(simd.e[i] - (simd.p[i] - 0.5)) <= 1e-14);
    }
  }
}

TEST_CASE("special inputs") {
  const std::vector<double> x{1e-300, -1e-300, 700.0, -700.0, 745.0, 1000.0, -1000.0};
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    if (!isa_available(isa)) continue;
    Out out(x.size());
    evaluate(isa, x, out.batch());
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(std::isfinite(out.p[i]));
      CHECK(std::isfinite(out.s[i]));
      CHECK(out.s[i] >= 0.0);
    }
    CHECK(out.s[5] == 0.0);
  }
}

TEST_CASE("dispatch") {
  CHECK(isa_available(Isa::scalar));
  CHECK(isa_available(active_isa()));
  CHECK(std::string(to_string(Isa::avx2)) == "avx2");

  const std::vector<double> x{1.0, 2.0};
  std::vector<double> p(2), e(2), s(1);
  CHECK_THROWS_AS(evaluate(x, {p, e, s}), DomainError);

  Out out(0);
  CHECK_NOTHROW(evaluate(std::span<const double>{}, out.batch()));
}

TEST_CASE("scalar override") {
  const char* prev = std::getenv("TLSTHERMO_ISA");
  const std::string saved = prev ? prev : "";
  setenv("TLSTHERMO_ISA", "scalar", 1);
  CHECK(active_isa() == Isa::scalar);
  if (prev)
    setenv("TLSTHERMO_ISA", saved.c_str(), 1);
  else
    unsetenv("TLSTHERMO_ISA");
}
