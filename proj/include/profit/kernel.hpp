#pragma once
// Batch evaluation of exponential profiles g(λ) = Σ_k a_k·e^{-λ·s_k}.
// Every parametric discount family used for rate-of-return analysis reduces
// to this form, so a single kernel serves them all. A scalar reference
// implementation always exists; an AVX2 variant is selected at runtime when
// the CPU supports it (override with PROFIT_KERNEL=auto|scalar|avx2).

#include <cstddef>
#include <functional>
#include <vector>

#include "profit/common.hpp"

namespace profit::kernel {

// g(λ) = Σ_k a_k·e^{-λ·s_k} with s strictly increasing and a_k ≠ 0.
struct Profile {
    std::vector<double> s;
    std::vector<double> a;
};

enum class Backend { Auto, Scalar, Avx2 };

const char* backend_name(Backend b);
bool avx2_supported();
// Applies the PROFIT_KERNEL override and CPU detection; the result is a
// concrete backend (never Auto). Throws input_error for an unsupported or
// unrecognized request.
Backend resolve_backend(Backend requested = Backend::Auto);

// out[i] = e^{x[i]} for finite x. The vector path is accurate to a few ulp
// and agrees with the scalar path to ≤ 4e-16 relative.
void vexp(const double* x, double* out, std::size_t n, Backend backend = Backend::Auto);

// out[i] = g(lambdas[i]). Large scans are split across threads
// (PROFIT_KERNEL_THREADS caps the worker count).
void profile_scan(const Profile& p, const double* lambdas, double* out, std::size_t n,
                  Backend backend = Backend::Auto);

// Scalar one-shot evaluation with compensated summation; the reference that
// all tolerance-gated decisions (bisections, sign calls) must use.
double profile_eval(const Profile& p, double lambda);
// g'(λ) = Σ_k -s_k·a_k·e^{-λ·s_k}, same evaluation discipline.
double profile_derivative(const Profile& p, double lambda);

// Worker-count cap: min(hardware threads, PROFIT_KERNEL_THREADS if set).
unsigned max_threads();
// Runs fn(begin, end) over a partition of [0, n); serial when n is small.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace profit::kernel
