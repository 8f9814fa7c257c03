#pragma once
// Internal declarations shared between the dispatch TU and the AVX2 TU.
// The AVX2 TU is compiled only on x86-64 (with -mavx2 -mfma); the dispatcher
// never references these symbols on other architectures.

#include <cstddef>

#include "profit/kernel.hpp"

namespace profit::kernel::detail {

#if defined(__x86_64__) || defined(_M_X64)
void vexp_avx2(const double* x, double* out, std::size_t n);
void profile_scan_avx2(const Profile& p, const double* lambdas, double* out, std::size_t n);
#endif

void vexp_scalar(const double* x, double* out, std::size_t n);
void profile_scan_scalar(const Profile& p, const double* lambdas, double* out, std::size_t n);

}  // namespace profit::kernel::detail
