#include "profit/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "kernel_impl.hpp"

namespace profit::kernel {

namespace detail {

void vexp_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void profile_scan_scalar(const Profile& p, const double* lambdas, double* out, std::size_t n) {
    const std::size_t m = p.s.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double lambda = lambdas[i];
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) acc += p.a[k] * std::exp(-lambda * p.s[k]);
        out[i] = acc;
    }
}

}  // namespace detail

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Auto: return "auto";
        case Backend::Scalar: return "scalar";
        default: return "avx2";
    }
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend resolve_backend(Backend requested) {
    if (requested == Backend::Auto) {
        if (const char* env = std::getenv("PROFIT_KERNEL")) {
            const std::string v(env);
            if (v == "scalar") return Backend::Scalar;
            if (v == "avx2") requested = Backend::Avx2;
            else if (!v.empty() && v != "auto")
                throw input_error("PROFIT_KERNEL must be one of auto, scalar, avx2");
        }
    }
    if (requested == Backend::Avx2) {
        if (!avx2_supported())
            throw input_error("AVX2 kernel requested but this CPU does not support AVX2+FMA");
        return Backend::Avx2;
    }
    if (requested == Backend::Scalar) return Backend::Scalar;
    return avx2_supported() ? Backend::Avx2 : Backend::Scalar;
}

void vexp(const double* x, double* out, std::size_t n, Backend backend) {
    backend = resolve_backend(backend);
#if defined(__x86_64__) || defined(_M_X64)
    if (backend == Backend::Avx2) {
        detail::vexp_avx2(x, out, n);
        return;
    }
#endif
    detail::vexp_scalar(x, out, n);
}

void profile_scan(const Profile& p, const double* lambdas, double* out, std::size_t n,
                  Backend backend) {
    if (p.s.size() != p.a.size()) throw input_error("profile_scan: malformed profile");
    backend = resolve_backend(backend);
    auto run = [&](std::size_t begin, std::size_t end) {
#if defined(__x86_64__) || defined(_M_X64)
        if (backend == Backend::Avx2) {
            detail::profile_scan_avx2(p, lambdas + begin, out + begin, end - begin);
            return;
        }
#endif
        detail::profile_scan_scalar(p, lambdas + begin, out + begin, end - begin);
    };
    // Only split genuinely large scans; each chunk writes a disjoint slice,
    // so results are bit-identical regardless of the thread count.
    const std::size_t min_chunk = 4096;
    if (n < 2 * min_chunk || max_threads() <= 1) {
        run(0, n);
        return;
    }
    parallel_for(n, run);
}

double profile_eval(const Profile& p, double lambda) {
    NeumaierAccumulator acc;
    for (std::size_t k = 0; k < p.s.size(); ++k) acc.add(p.a[k] * std::exp(-lambda * p.s[k]));
    return acc.value();
}

double profile_derivative(const Profile& p, double lambda) {
    NeumaierAccumulator acc;
    for (std::size_t k = 0; k < p.s.size(); ++k)
        acc.add(-p.s[k] * p.a[k] * std::exp(-lambda * p.s[k]));
    return acc.value();
}

unsigned max_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("PROFIT_KERNEL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const unsigned workers = std::min<unsigned>(max_threads(), 16);
    if (n == 0) return;
    if (workers <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    // Chunk boundaries stay multiples of 8 so a vectorized fn sees the same
    // lane grouping (and the same scalar tail) as a serial run would.
    std::size_t chunk = (n + workers - 1) / workers;
    chunk = (chunk + 7) & ~static_cast<std::size_t>(7);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t begin = 0; begin < n; begin += chunk) {
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace profit::kernel
