#pragma once

// Batch evaluation of the dimensionless equilibrium kernels over arrays of
// x = gap/(k_B T). A scalar reference implementation is always built; an AVX2
// variant is compiled when the toolchain supports it and selected at runtime
// when the CPU does. Setting TLSTHERMO_ISA=scalar forces the reference path.

#include <cstddef>
#include <span>

namespace tls::kernels {

enum class Isa { scalar, avx2 };
const char* to_string(Isa isa) noexcept;

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa) noexcept;
/// Best available ISA, honoring the TLSTHERMO_ISA override.
Isa active_isa() noexcept;

struct PropertyBatch {
  std::span<double> population;    // p
  std::span<double> energy_ratio;  // E / gap
  std::span<double> entropy;       // S / k_B
};

/// Dispatches to active_isa(). All output spans must have x.size() elements.
void evaluate(std::span<const double> x, PropertyBatch out);
/// Runs a specific ISA; throws DomainError if it is unavailable.
void evaluate(Isa isa, std::span<const double> x, PropertyBatch out);

}  // namespace tls::kernels
