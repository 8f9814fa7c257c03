#pragma once
// Payback analysis. The cumulative discounted value τ ↦ G_τ(x) of a step
// flow is itself a right-continuous step function with jumps at transaction
// times, so every decision below reduces to exact sign tests on finitely
// many compensated partial sums.

#include <optional>

#include "profit/cashflow.hpp"
#include "profit/discount.hpp"

namespace profit {

// Two-part refined payback: τ is the first time with G_τ ≥ 0 and λ ∈ (0,1]
// the least solution of G_{τ,λ} = 0 (λ = 1 exactly when G_τ = 0).
struct RefinedDpp {
    double tau;
    double lambda;
};

enum class DppDomainClass {
    QMinus,      // G_τ < 0 for all τ: never pays back
    QPossesses,  // single sign switch: DPP exists
    QPlus,       // G_τ ≥ 0 throughout and H_{1/α(0+)} ≥ 0: instant payback
    Outside      // anything else (multiple switches, mixed heads)
};

// DPP^{(α)}(x): the time τ₀ > 0 with G_τ < 0 on (0, τ₀) and G_τ ≥ 0 on
// [τ₀, ∞), when it exists. Requires x(0) < 0 implicitly (the head piece must
// be strictly negative). *boundary is set when some cumulative value lies
// within tol of 0, i.e. the answer could flip under perturbation.
std::optional<double> dpp(const Discount& alpha, const CashFlow& x, double tol = default_tol,
                          bool* boundary = nullptr);

// Conventional payback period: DPP under the unit discount function.
std::optional<double> pp(const CashFlow& x, double tol = default_tol, bool* boundary = nullptr);

// Refined DPP (τ, λ). For step flows possession coincides with DPP
// possession; x(0) < 0 is required by definition.
std::optional<RefinedDpp> refined_dpp(const Discount& alpha, const CashFlow& x,
                                      double tol = default_tol, bool* boundary = nullptr);

// Interpolated payback DPP* = τ - 1 + λ for discrete projects. Throws
// input_error when transaction times are not integers.
std::optional<double> dpp_star(const Discount& alpha, const CashFlow& x,
                               double tol = default_tol, bool* boundary = nullptr);

// Position of x within the natural domain of RDPP = 1/DPP. α = χ rejected.
DppDomainClass classify_dpp_domain(const Discount& alpha, const CashFlow& x,
                                   double tol = default_tol);

// The natural extension RDPP̄ (extended-real): on QMinus the γ-supremum
// closed form min(1, (F(x)-x(0))/(-x(0))) - 1 gated by α(0+) (sup ∅ = -∞);
// 1/DPP on possession; +∞ on QPlus. Throws domain_error outside the domain
// and input_error for α = χ.
double rdpp_natural_extension(const Discount& alpha, const CashFlow& x,
                              double tol = default_tol);

// Lexicographic refined-DPP comparison: x is at least as profitable as y iff
// (τ(y), λ(y)) ≥_lex (τ(x), λ(x)). nullopt when either side lacks the
// refined DPP.
std::optional<Relation> lex_compare_refined(const Discount& alpha, const CashFlow& x,
                                            const CashFlow& y, double tol = default_tol);

// Diagnostic only: the "stays nonnegative forever after" recovery time
// min{t : G_τ ≥ 0 for all τ ≥ t}. Its reciprocal is NOT a profitability
// metric; exposed to let callers see where that definition disagrees.
std::optional<double> hajdasinski_recovery_time(const Discount& alpha, const CashFlow& x);

}  // namespace profit
