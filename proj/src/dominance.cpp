#include "profit/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace profit {

namespace {

void check_grid(std::span<const double> grid) {
    if (grid.size() < 2) throw input_error("dominance: grid needs at least two points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || grid[i] < 0.0)
            throw input_error("dominance: grid times must be finite and nonnegative");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw input_error("dominance: grid times must be strictly increasing");
    }
}

// Evaluate, treating out-of-range grid-sampled lookups as "unknown".
bool try_eval(const Discount& d, double t, double& out) {
    try {
        out = d(t);
        return true;
    } catch (const input_error&) {
        return false;
    }
}

}  // namespace

Tri dominance_1(const Discount& alpha, const Discount& beta, std::span<const double> grid,
                DominanceOptions opts) {
    check_grid(grid);
    // Analytic short-circuits.
    if (beta.is_chi()) return Tri::True;  // any α ≥ χ pointwise
    if (const auto* ea = std::get_if<dsc::Exponential>(&alpha.node()))
        if (const auto* eb = std::get_if<dsc::Exponential>(&beta.node()))
            return ea->rate <= eb->rate ? Tri::True : Tri::False;
    if (std::holds_alternative<dsc::Unit>(alpha.node())) return Tri::True;

    bool undetermined = false;
    for (double t : grid) {
        double a, b;
        if (!try_eval(alpha, t, a) || !try_eval(beta, t, b)) {
            undetermined = true;
            continue;
        }
        const double band = opts.tol * std::max({1.0, std::abs(a), std::abs(b)});
        if (a - b < -band) return Tri::False;
        if (a < b) undetermined = true;  // below β but within the band
    }
    return undetermined ? Tri::Undetermined : Tri::True;
}

Tri dominance_2(const Discount& alpha, const Discount& beta, std::span<const double> grid,
                DominanceOptions opts) {
    check_grid(grid);
    // Support comparison is analytic: supports of nonincreasing functions are
    // intervals from 0, so they coincide iff the suprema agree and positivity
    // at a shared finite supremum agrees.
    const double sa = alpha.support_supremum();
    const double sb = beta.support_supremum();
    if (sa != sb) return Tri::False;
    if (std::isfinite(sa)) {
        double a_end, b_end;
        if (try_eval(alpha, sa, a_end) && try_eval(beta, sa, b_end)) {
            if ((a_end > 0.0) != (b_end > 0.0)) return Tri::False;
        }
    }

    bool undetermined = false;
    double prev_ratio = 0.0;
    bool have_prev = false;
    for (double t : grid) {
        if (t > sa) break;  // outside the common support
        double a, b;
        if (!try_eval(alpha, t, a) || !try_eval(beta, t, b)) {
            undetermined = true;
            continue;
        }
        if (b <= 0.0) continue;  // boundary point of the support
        const double ratio = a / b;
        if (have_prev) {
            const double band = opts.tol * std::max(1.0, std::abs(prev_ratio));
            if (ratio - prev_ratio < -band) return Tri::False;
            if (ratio < prev_ratio) undetermined = true;
        }
        prev_ratio = ratio;
        have_prev = true;
    }
    return undetermined ? Tri::Undetermined : Tri::True;
}

Tri dominance_3(const Discount& alpha, const Discount& beta, std::span<const double> grid,
                DominanceOptions opts) {
    check_grid(grid);
    if (!alpha.smooth_strictly_decreasing() || !beta.smooth_strictly_decreasing())
        throw input_error(
            "dominance_3: both discount functions must be differentiable with "
            "negative derivative");
    if (alpha == beta) return Tri::True;  // ratio is constant 1

    const double span = grid.back() - grid.front();
    const double h = opts.fd_step_factor * span;
    std::vector<double> ratios;
    ratios.reserve(grid.size());
    for (double t : grid) {
        double lo = t - h, hi = t + h;
        if (lo < 0.0) {
            lo = t;
            hi = t + 2.0 * h;  // one-sided difference near 0
        }
        const double da = alpha(hi) - alpha(lo);
        const double db = beta(hi) - beta(lo);
        if (db >= 0.0) return Tri::Undetermined;  // derivative vanished numerically
        ratios.push_back(da / db);
    }
    double worst = 0.0;
    double scale = 1.0;
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        worst = std::min(worst, ratios[i] - ratios[i - 1]);
        scale = std::max({scale, std::abs(ratios[i]), std::abs(ratios[i - 1])});
    }
    const double band = opts.tol * scale;
    if (worst >= 0.0) return Tri::True;
    if (worst <= -band) return Tri::False;
    return Tri::Undetermined;
}

}  // namespace profit
