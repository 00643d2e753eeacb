#include "tlsthermo/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

#include "kernels_simd.hpp"
#include "tlsthermo/equilibrium.hpp"
#include "tlsthermo/error.hpp"

namespace tls::kernels {

namespace detail {

void evaluate_scalar(const double* x, std::size_t n, double* p, double* e, double* s) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = dimless::population(x[i]);
    e[i] = dimless::energy_ratio(x[i]);
    s[i] = dimless::entropy(x[i]);
  }
}

}  // namespace detail

const char* to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(TLSTHERMO_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept {
  if (const char* forced = std::getenv("TLSTHERMO_ISA"); forced && std::strcmp(forced, "scalar") == 0)
    return Isa::scalar;
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

void evaluate(Isa isa, std::span<const double> x, PropertyBatch out) {
  const std::size_t n = x.size();
  if (out.population.size() != n || out.energy_ratio.size() != n || out.entropy.size() != n) {
    throw DomainError(ErrorKind::invalid_argument, "batch output spans must match the input length " +
                                                       std::to_string(n));
  }
  if (!isa_available(isa)) {
    throw DomainError(ErrorKind::invalid_argument,
                      std::string("kernel ISA '") + to_string(isa) + "' is not available on this machine");
  }
  switch (isa) {
    case Isa::scalar:
      detail::evaluate_scalar(x.data(), n, out.population.data(), out.energy_ratio.data(), out.entropy.data());
      return;
    case Isa::avx2:
#if defined(TLSTHERMO_HAVE_AVX2)
      detail::evaluate_avx2(x.data(), n, out.population.data(), out.energy_ratio.data(), out.entropy.data());
#endif
      return;
  }
}

void evaluate(std::span<const double> x, PropertyBatch out) { evaluate(active_isa(), x, out); }

}  // namespace tls::kernels
