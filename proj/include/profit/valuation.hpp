#pragma once
// NPV functionals F^{(α)}(x) = Σ_k a_k·α(t_k) and the derived valuations:
// truncations G_τ, left limits G_{τ-}, mixtures G_{τ,λ}, reductions H_γ and
// intensity rescalings U_λ. All sums are compensated and taken in time order.

#include <string>
#include <utility>

#include "profit/cashflow.hpp"
#include "profit/discount.hpp"

namespace profit {

double npv(const Discount& alpha, const CashFlow& x);

// G_τ(x) = F^{(α·I_[0,τ])}(x): the value of x truncated at τ (inclusive).
double npv_truncated(const Discount& alpha, const CashFlow& x, double tau);

// G_{τ-}(x) = F^{(α·I_[0,τ))}(x): truncation strictly before τ.
double npv_left_limit_truncated(const Discount& alpha, const CashFlow& x, double tau);

// G_{τ,λ} = λ·G_τ + (1-λ)·G_{τ-} for λ ∈ [0,1].
double npv_mixed(const Discount& alpha, const CashFlow& x, double tau, double lambda);

// H_γ = γ·F^{(α)} + (1-γ)·F^{(χ)}; requires γ ∈ [0, 1/α(0+)] so that the
// mixture is again an NPV functional (for the χ-mixed discount function).
double h_gamma(const Discount& alpha, const CashFlow& x, double gamma);

// U_λ(x) = F^{(α(·/λ))}(x): the project run at intensity λ > 0.
double intensity_npv(const Discount& alpha, const CashFlow& x, double lambda);

// A labeled NPV functional; the unit of scenario sets.
struct Npv {
    Discount alpha;
    std::string label;

    explicit Npv(Discount a) : alpha(std::move(a)), label(alpha.describe()) {}
    Npv(Discount a, std::string l) : alpha(std::move(a)), label(std::move(l)) {}

    double operator()(const CashFlow& x) const { return npv(alpha, x); }
};

}  // namespace profit
