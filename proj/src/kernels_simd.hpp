#pragma once

// Internal entry points of the batch kernels. The AVX2 translation unit is
// compiled with -mavx2 -mfma, so this header must stay free of inline
// functions that other translation units could pick up.

#include <cstddef>

namespace tls::kernels::detail {

void evaluate_scalar(const double* x, std::size_t n, double* p, double* e, double* s) noexcept;

#if defined(TLSTHERMO_HAVE_AVX2)
void evaluate_avx2(const double* x, std::size_t n, double* p, double* e, double* s) noexcept;
#endif

}  // namespace tls::kernels::detail
