#include "profit/indices.hpp"

#include <algorithm>
#include <cmath>

#include "profit/valuation.hpp"

namespace profit {

std::optional<double> pi(const Discount& alpha, const CashFlow& x) {
    if (alpha.is_chi()) throw input_error("pi: alpha = chi degenerates the index (F = G)");
    const double f = npv(alpha, x);
    const double x0 = x.initial();
    if (!(f >= 0.0 && x0 < 0.0)) return std::nullopt;
    return 1.0 - f / x0;
}

std::optional<double> ri(const Discount& f, const Discount& g, const CashFlow& x) {
    if (f == g) throw input_error("ri: F and G must be distinct NPV functionals");
    const double fv = npv(f, x);
    const double gv = npv(g, x);
    if (!(fv >= 0.0 && gv < 0.0)) return std::nullopt;
    return 1.0 - fv / gv;
}

double undiscounted_pi_extension(const CashFlow& x) {
    const double head = x.initial();
    const double total = x.total();
    if (head < 0.0) return total >= 0.0 ? (total - head) / (-head) : 0.0;
    if (total >= 0.0) return inf;
    throw domain_error(
        "undiscounted_pi_extension: x(+inf) < 0 with x(0) >= 0 lies outside the natural "
        "domain of the extended index");
}

namespace {

void check_index_grid(const std::vector<double>& grid) {
    if (grid.size() < 2 || grid.front() != 0.0)
        throw input_error("index grid: need at least two times starting at 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || grid[i] <= grid[i - 1])
            throw input_error("index grid: times must be finite and strictly increasing");
    }
}

// One-sided linear constraints a·w ≥ b accumulated into interval bounds.
struct WBounds {
    double lo = -inf, hi = inf;
    bool informative = false;  // at least one constraint with a ≠ 0

    void add(double a, double b) {
        if (a > 0.0) {
            lo = std::max(lo, b / a);
            informative = true;
        } else if (a < 0.0) {
            hi = std::min(hi, b / a);
            informative = true;
        }
        // a == 0: satisfied automatically (b ≤ 0 because w = 0 is feasible)
    }
};

WBounds bounds_on_grid(const Discount& f, const Discount& g, const std::vector<double>& grid) {
    WBounds w;
    std::vector<double> av(grid.size()), bv(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        av[i] = f(grid[i]);
        bv[i] = g(grid[i]);
    }
    // Nonnegativity: w·(α-β) ≥ -β at every grid time.
    for (std::size_t i = 0; i < grid.size(); ++i) w.add(av[i] - bv[i], -bv[i]);
    // Monotonicity across adjacent grid times: w·(dα - dβ) ≥ -dβ where
    // d· = value(t_i) - value(t_{i+1}) ≥ 0 for genuine discount functions.
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double da = av[i] - av[i + 1];
        const double db = bv[i] - bv[i + 1];
        w.add(da - db, -db);
    }
    // Jump at 0: 1 = h(0) ≥ h(0+) means w·(α(0+) - β(0+)) ≤ 1 - β(0+).
    const double a0 = f.right_limit_at_zero();
    const double b0 = g.right_limit_at_zero();
    w.add(-(a0 - b0), -(1.0 - b0));
    // And h(0+) ≥ 0 (the first grid time may be far from 0).
    w.add(a0 - b0, -b0);
    return w;
}

std::vector<double> refine4(const std::vector<double>& grid) {
    std::vector<double> out;
    out.reserve(grid.size() * 4);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double a = grid[i], b = grid[i + 1];
        out.push_back(a);
        out.push_back(a + 0.25 * (b - a));
        out.push_back(a + 0.5 * (b - a));
        out.push_back(a + 0.75 * (b - a));
    }
    out.push_back(grid.back());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

TildeBounds tilde_bounds(const Discount& f, const Discount& g, std::vector<double> grid) {
    if (f == g) throw input_error("tilde_bounds: F and G must be distinct NPV functionals");
    check_index_grid(grid);
    const WBounds raw = bounds_on_grid(f, g, grid);
    if (!raw.informative)
        throw input_error(
            "tilde_bounds: the two discount functions coincide on the whole grid; refine "
            "the grid or choose distinct functionals");
    const WBounds fine = bounds_on_grid(f, g, refine4(grid));

    TildeBounds out;
    out.grid = std::move(grid);
    // W̃ always contains [0,1] (both endpoints are NPV functionals and the
    // set is convex); clip floating noise back to that guarantee.
    out.w_inf = std::min(raw.lo, 0.0);
    out.w_sup = std::max(raw.hi, 1.0);
    out.w_inf_clamped = std::min(std::max(raw.lo, fine.lo), 0.0);
    out.w_sup_clamped = std::max(std::min(raw.hi, fine.hi), 1.0);
    return out;
}

double ri_natural_extension(const Discount& f, const Discount& g, const CashFlow& x,
                            std::vector<double> grid) {
    const TildeBounds w = tilde_bounds(f, g, std::move(grid));
    const double fv = npv(f, x);
    const double gv = npv(g, x);
    const double diff = fv - gv;
    const double ft = diff == 0.0 ? gv : gv + w.w_sup_clamped * diff;
    const double gt = diff == 0.0 ? gv : gv + w.w_inf_clamped * diff;
    if (ft < 0.0 && gt < 0.0) return 0.0;
    if (ft >= 0.0 && gt < 0.0) return 1.0 - ft / gt;
    if (ft >= 0.0 && gt >= 0.0) return inf;
    throw domain_error(
        "ri_natural_extension: F~(x) < 0 with G~(x) >= 0; the project lies outside the "
        "natural domain of the extended ratio index");
}

std::vector<double> default_index_grid(const CashFlow& x) {
    std::vector<double> grid{0.0};
    double t_last = 0.0;
    double t_first = inf;
    for (const auto& tx : x.transactions()) {
        grid.push_back(tx.time);
        t_last = std::max(t_last, tx.time);
        if (tx.time > 0.0) t_first = std::min(t_first, tx.time);
    }
    if (t_last == 0.0) {
        t_last = 1.0;
        t_first = 1.0;
    }
    if (!std::isfinite(t_first)) t_first = t_last;
    // Geometric mesh from a quarter of the first positive time out to 4x the
    // last one, dense enough to catch monotonicity violations between
    // transaction times.
    const double lo = 0.25 * t_first;
    const double hi = 4.0 * t_last;
    const int n = 64;
    for (int i = 0; i <= n; ++i)
        grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

}  // namespace profit
