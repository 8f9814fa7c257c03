#include <doctest.h>

#include <cmath>
#include <vector>

#include <profit/valuation.hpp>

#include "../support/gen.hpp"

using profit::CashFlow;
using profit::Discount;
using profit::Transaction;

namespace {
CashFlow flow(std::initializer_list<Transaction> txs) {
    return CashFlow(std::vector<Transaction>(txs));
}
double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }
}  // namespace

TEST_CASE("npv basics") {
    CashFlow x = flow({{0.0, -1.0}, {1.0, 2.0}, {2.0, -0.7}});
    // Undiscounted value is the total sum.
    CHECK(npv(Discount::exponential(0.0), x) == doctest::Approx(0.3).epsilon(1e-15));
    // Unit discount likewise.
    CHECK(npv(Discount::unit(), x) == doctest::Approx(0.3).epsilon(1e-15));
    // χ values only the initial transaction.
    CHECK(npv(Discount::impatient(), x) == -1.0);
    // Compound 10%: -1 + 2/1.1 - 0.7/1.21.
    CHECK(npv(Discount::compound_annual(0.1), x) ==
          doctest::Approx(-1.0 + 2.0 / 1.1 - 0.7 / 1.21).epsilon(1e-15));
    // Zero project.
    CHECK(npv(Discount::exponential(0.1), CashFlow()) == 0.0);
    // F(1_0) = 1 for every discount function.
    for (const auto& a : testgen::discount_pool()) CHECK(npv(a, CashFlow::single(0.0, 1.0)) == 1.0);
}

TEST_CASE("npv is additive and positively homogeneous") {
    auto g = testgen::rng(31);
    auto pool = testgen::discount_pool();
    for (int i = 0; i < 60; ++i) {
        CashFlow x = testgen::random_flow(g, 5, 4.5);  // inside truncation horizons
        CashFlow y = testgen::random_flow(g, 5, 4.5);
        const auto& a = pool[static_cast<std::size_t>(i) % pool.size()];
        double fx = npv(a, x), fy = npv(a, y);
        CHECK(rel(npv(a, combine(x, y)), fx + fy) <= 1e-12);
        CHECK(rel(npv(a, x.scale(3.0)), 3.0 * fx) <= 1e-12);
        // Positivity: x ∈ P+ ⇒ F(x) ≥ 0.
        if (x.in_P_plus()) CHECK(fx >= -1e-15);
    }
}

TEST_CASE("truncated values: G_tau and its left limit") {
    CashFlow x = flow({{0.0, -1.0}, {1.0, 2.0}, {2.0, -0.7}});
    Discount a = Discount::compound_annual(0.1);
    CHECK(npv_truncated(a, x, 1.0) == doctest::Approx(-1.0 + 2.0 / 1.1).epsilon(1e-15));
    CHECK(npv_left_limit_truncated(a, x, 1.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(npv_truncated(a, x, 0.0) == -1.0);
    // The left limit is only defined for tau > 0.
    CHECK_THROWS_AS(npv_left_limit_truncated(a, x, 0.0), profit::input_error);
    // Past the horizon both agree with the full value.
    CHECK(npv_truncated(a, x, 10.0) == doctest::Approx(npv(a, x)).epsilon(1e-15));
    CHECK_THROWS_AS(npv_truncated(a, x, -1.0), profit::input_error);

    // G_τ(x) = F(x_{≤τ}) on random flows and discounts.
    auto g = testgen::rng(32);
    auto pool = testgen::discount_pool();
    for (int i = 0; i < 60; ++i) {
        CashFlow y = testgen::random_flow(g, 5, 4.5);
        double tau = testgen::uniform(g, 0.0, 5.0);
        const auto& al = pool[static_cast<std::size_t>(i) % pool.size()];
        CHECK(rel(npv_truncated(al, y, tau), npv(al, y.truncate(tau))) <= 1e-12);
    }
}

TEST_CASE("npv_mixed interpolates between the one-sided truncations") {
    CashFlow x = flow({{0.0, -1.0}, {1.0, 2.0}});
    Discount a = Discount::exponential(0.2);
    double g1 = npv_truncated(a, x, 1.0);
    double g0 = npv_left_limit_truncated(a, x, 1.0);
    CHECK(npv_mixed(a, x, 1.0, 1.0) == doctest::Approx(g1).epsilon(1e-15));
    CHECK(npv_mixed(a, x, 1.0, 0.0) == doctest::Approx(g0).epsilon(1e-15));
    CHECK(npv_mixed(a, x, 1.0, 0.25) ==
          doctest::Approx(0.25 * g1 + 0.75 * g0).epsilon(1e-14));
    CHECK_THROWS_AS(npv_mixed(a, x, 1.0, 1.5), profit::input_error);
    CHECK_THROWS_AS(npv_mixed(a, x, 1.0, -0.5), profit::input_error);
}

TEST_CASE("h_gamma equals the npv of the reduced flow") {
    auto g = testgen::rng(33);
    auto pool = testgen::discount_pool();
    for (int i = 0; i < 120; ++i) {
        CashFlow x = testgen::random_flow(g, 5, 4.5);
        double gamma = testgen::uniform(g, 0.0, 1.0);
        const auto& a = pool[static_cast<std::size_t>(i) % pool.size()];
        CHECK(rel(h_gamma(a, x, gamma), npv(a, x.reduce(gamma))) <= 1e-12);
        // And the explicit affine form x(0) + γ(F(x) − x(0)).
        double affine = x.initial() + gamma * (npv(a, x) - x.initial());
        CHECK(rel(h_gamma(a, x, gamma), affine) <= 1e-12);
    }
    // γ may exceed 1 up to 1/α(0+) (the χ-mixed discount stays admissible).
    Discount half = Discount::chi_mix(Discount::exponential(0.1), 0.5);  // α(0+) = 0.5
    CashFlow x = flow({{0.0, -1.0}, {1.0, 2.0}});
    CHECK(h_gamma(half, x, 2.0) ==
          doctest::Approx(-1.0 + 2.0 * (npv(half, x) + 1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(h_gamma(half, x, 2.1), profit::input_error);
    CHECK_THROWS_AS(h_gamma(Discount::exponential(0.1), x, 1.1), profit::input_error);
}

TEST_CASE("intensity_npv: U_lambda as a time rescaling") {
    CashFlow x = flow({{0.0, -1.0}, {1.0, 2.0}, {3.0, 0.5}});
    // For the exponential family U_λ under rate r equals rate r/λ.
    for (double lam : {0.5, 1.0, 2.0, 7.0}) {
        CHECK(rel(intensity_npv(Discount::exponential(0.3), x, lam),
                  npv(Discount::exponential(0.3 / lam), x)) <= 1e-13);
    }
    // And in general it is the npv of the time-rescaled flow x(·/λ⁻¹)... i.e.
    // evaluating α at t/λ, which equals valuing time_scale(1/λ) under α.
    auto g = testgen::rng(34);
    for (int i = 0; i < 40; ++i) {
        CashFlow y = testgen::random_flow(g, 5, 4.0);
        double lam = testgen::uniform(g, 0.3, 3.0);
        CHECK(rel(intensity_npv(Discount::generalized_hyperbolic(0.2, 1.0), y, lam),
                  npv(Discount::generalized_hyperbolic(0.2, 1.0), y.time_scale(1.0 / lam))) <=
              1e-12);
    }
    CHECK_THROWS_AS(intensity_npv(Discount::exponential(0.1), x, 0.0), profit::input_error);
    CHECK_THROWS_AS(intensity_npv(Discount::exponential(0.1), x, -2.0), profit::input_error);
}

TEST_CASE("Npv functor carries a label and evaluates") {
    profit::Npv f(Discount::exponential(0.2));
    CHECK(f.label == Discount::exponential(0.2).describe());
    CashFlow x = flow({{0.0, -1.0}, {1.0, 2.0}});
    CHECK(f(x) == doctest::Approx(npv(Discount::exponential(0.2), x)).epsilon(1e-15));
    profit::Npv named(Discount::unit(), "undiscounted");
    CHECK(named.label == "undiscounted");
}
