#include <doctest.h>

#include <cmath>
#include <vector>

#include <profit/indices.hpp>
#include <profit/valuation.hpp>

#include "../support/gen.hpp"

using profit::CashFlow;
using profit::Discount;
using profit::Transaction;

namespace {
CashFlow flow(std::initializer_list<Transaction> txs) {
    return CashFlow(std::vector<Transaction>(txs));
}
constexpr double inf = std::numeric_limits<double>::infinity();

std::vector<double> unit_grid(int last) {
    std::vector<double> g;
    for (int t = 0; t <= last; ++t) g.push_back(t);
    return g;
}
}  // namespace

TEST_CASE("pi: the profitability index") {
    CashFlow y = flow({{0.0, -1.0}, {1.0, 2.0}, {2.0, -0.7}});
    Discount a = Discount::compound_annual(0.1);
    auto p = pi(a, y);
    REQUIRE(p.has_value());
    double f = -1.0 + 2.0 / 1.1 - 0.7 / 1.21;
    CHECK(*p == doctest::Approx(1.0 - f / -1.0).epsilon(1e-14));
    CHECK(*p == doctest::Approx(1.2396694214876034).epsilon(1e-14));

    // Not possessed when F(x) < 0 or x(0) ≥ 0.
    CHECK_FALSE(pi(a, flow({{0.0, -1.0}, {1.0, 0.5}})).has_value());
    CHECK_FALSE(pi(a, flow({{0.0, 1.0}, {1.0, 1.0}})).has_value());
    // χ degenerates the ratio: rejected outright.
    CHECK_THROWS_AS(pi(Discount::impatient(), y), profit::input_error);
}

TEST_CASE("ri: relative profitability of two functionals") {
    Discount f = Discount::exponential(0.1);
    Discount g = Discount::exponential(0.2);
    CashFlow x = flow({{0.0, -1.0}, {1.0, 1.15}});
    double fv = npv(f, x), gv = npv(g, x);
    REQUIRE(fv >= 0.0);
    REQUIRE(gv < 0.0);
    auto r = ri(f, g, x);
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(1.0 - fv / gv).epsilon(1e-14));
    CHECK(*r > 1.0);  // accepted by F, rejected by G: index exceeds 1

    // Both positive: not possessed.
    CHECK_FALSE(ri(f, g, flow({{0.0, -1.0}, {1.0, 1.8}})).has_value());
    // Identical functionals are rejected.
    CHECK_THROWS_AS(ri(f, f, x), profit::input_error);

    // RI against χ is exactly PI.
    auto via_chi = ri(f, Discount::impatient(), x);
    auto via_pi = pi(f, x);
    REQUIRE(via_chi.has_value());
    REQUIRE(via_pi.has_value());
    CHECK(*via_chi == doctest::Approx(*via_pi).epsilon(1e-15));
}

TEST_CASE("undiscounted pi extension") {
    // (x(+inf) - x(0)) / (-x(0)) = (3 + 1) / 1 = 4.
    CHECK(undiscounted_pi_extension(flow({{0.0, -1.0}, {2.0, 4.0}})) == 4.0);
    // Both negative: extension pins the index at 0.
    CHECK(undiscounted_pi_extension(flow({{0.0, -1.0}, {1.0, 0.5}})) == 0.0);
    // Both nonnegative: +inf.
    CHECK(undiscounted_pi_extension(flow({{0.0, 2.0}, {1.0, 1.0}})) == inf);
    CHECK(undiscounted_pi_extension(flow({{1.0, 5.0}})) == inf);  // x(0) = 0
    // x(+inf) < 0 with x(0) ≥ 0: outside the natural domain.
    CHECK_THROWS_AS(undiscounted_pi_extension(flow({{0.0, 1.0}, {1.0, -3.0}})),
                    profit::domain_error);
}

TEST_CASE("tilde bounds for two exponentials: frozen closed forms") {
    // For α = e^{-0.1t}, β = e^{-0.2t} on the grid {0,1,...,50}:
    //  - the binding upper bound comes from monotonicity over the first cell:
    //    w ≤ Δβ/(Δβ-Δα) with Δα = 1-e^{-0.1}, Δβ = 1-e^{-0.2};
    //  - the binding lower bound comes from nonnegativity at t = 50:
    //    w ≥ -1/(e^{5} - 1).
    Discount f = Discount::exponential(0.1);
    Discount g = Discount::exponential(0.2);
    auto tb = tilde_bounds(f, g, unit_grid(50));

    const double da = 1.0 - std::exp(-0.1), db = 1.0 - std::exp(-0.2);
    CHECK(tb.w_sup == doctest::Approx(db / (db - da)).epsilon(1e-12));
    CHECK(tb.w_inf == doctest::Approx(-1.0 / (std::exp(5.0) - 1.0)).epsilon(1e-12));

    // The clamped sup tightens on the 4x-refined grid (quarter cells), while
    // the clamped inf stays pinned by the same t = 50 endpoint constraint.
    const double dafine = 1.0 - std::exp(-0.025), dbfine = 1.0 - std::exp(-0.05);
    CHECK(tb.w_sup_clamped == doctest::Approx(dbfine / (dbfine - dafine)).epsilon(1e-12));
    CHECK(tb.w_inf_clamped == doctest::Approx(-1.0 / (std::exp(5.0) - 1.0)).epsilon(1e-12));
    CHECK(tb.w_sup_clamped <= tb.w_sup);
    CHECK(tb.w_inf_clamped >= tb.w_inf);

    // The true W̃ for this pair is [0, 2]: the grid outer approximation must
    // contain it and the quarter-cell refinement must stay within ~2.5%.
    CHECK(tb.w_sup >= 2.0);
    CHECK(tb.w_inf <= 0.0);
    CHECK(tb.w_sup_clamped >= 2.0);
    CHECK(tb.w_sup_clamped <= 2.06);
}

TEST_CASE("tilde bounds always contain [0,1] and validate inputs") {
    Discount f = Discount::generalized_hyperbolic(0.3, 1.0);
    Discount g = Discount::constant_sensitivity(0.25, 0.8);
    auto tb = tilde_bounds(f, g, unit_grid(30));
    CHECK(tb.w_inf <= 0.0);
    CHECK(tb.w_sup >= 1.0);
    CHECK(tb.w_inf_clamped <= 0.0);
    CHECK(tb.w_sup_clamped >= 1.0);

    CHECK_THROWS_AS(tilde_bounds(f, f, unit_grid(10)), profit::input_error);
    // Distinct representations that coincide everywhere: uninformative grid.
    CHECK_THROWS_AS(tilde_bounds(Discount::exponential(0.0), Discount::unit(), unit_grid(10)),
                    profit::input_error);
    // Grid validation.
    CHECK_THROWS_AS(tilde_bounds(f, g, std::vector<double>{0.0}), profit::input_error);
    CHECK_THROWS_AS(tilde_bounds(f, g, std::vector<double>{1.0, 2.0}), profit::input_error);
    CHECK_THROWS_AS(tilde_bounds(f, g, std::vector<double>{0.0, 2.0, 2.0}), profit::input_error);
}

TEST_CASE("ri natural extension: all four branches") {
    Discount f = Discount::exponential(0.1);
    Discount g = Discount::exponential(0.2);
    auto grid = unit_grid(50);
    auto tb = tilde_bounds(f, g, grid);

    auto tilde = [&](const CashFlow& x) {
        double fv = npv(f, x), gv = npv(g, x), diff = fv - gv;
        return std::pair<double, double>{gv + tb.w_sup_clamped * diff,
                                         gv + tb.w_inf_clamped * diff};
    };

    // Interior branch: F̃ ≥ 0 > G̃ gives the honest ratio 1 - F̃/G̃.
    CashFlow mid = flow({{0.0, -1.0}, {1.0, 1.05}});
    auto [ft, gt] = tilde(mid);
    REQUIRE(ft >= 0.0);
    REQUIRE(gt < 0.0);
    CHECK(ri_natural_extension(f, g, mid, grid) ==
          doctest::Approx(1.0 - ft / gt).epsilon(1e-12));

    // Both tilde values negative: the extension pins the index at 0.
    CashFlow lo = flow({{0.0, -1.0}, {1.0, 0.5}});
    auto [ft2, gt2] = tilde(lo);
    REQUIRE(ft2 < 0.0);
    REQUIRE(gt2 < 0.0);
    CHECK(ri_natural_extension(f, g, lo, grid) == 0.0);

    // Both nonnegative: +inf.
    CashFlow hi = flow({{0.0, -1.0}, {1.0, 2.0}});
    auto [ft3, gt3] = tilde(hi);
    REQUIRE(ft3 >= 0.0);
    REQUIRE(gt3 >= 0.0);
    CHECK(ri_natural_extension(f, g, hi, grid) == inf);

    // F̃ < 0 ≤ G̃: outside the natural domain.
    CashFlow bad = flow({{0.0, 1.0}, {1.0, -1.02}});
    auto [ft4, gt4] = tilde(bad);
    REQUIRE(ft4 < 0.0);
    REQUIRE(gt4 >= 0.0);
    CHECK_THROWS_AS(ri_natural_extension(f, g, bad, grid), profit::domain_error);
}

TEST_CASE("default index grid is well-formed and anchored to the flow") {
    CashFlow x = flow({{0.0, -1.0}, {1.0, 2.0}, {3.5, 0.5}});
    auto grid = default_index_grid(x);
    REQUIRE(grid.size() >= 2);
    CHECK(grid.front() == 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
    CHECK(std::find(grid.begin(), grid.end(), 1.0) != grid.end());
    CHECK(std::find(grid.begin(), grid.end(), 3.5) != grid.end());
    CHECK(grid.back() == doctest::Approx(14.0));  // 4x the last transaction

    // Zero project: still produces a usable grid.
    auto zgrid = default_index_grid(CashFlow());
    CHECK(zgrid.front() == 0.0);
    CHECK(zgrid.size() >= 2);
}
