#pragma once
// Rate-of-return analysis over a D-family: the acceptance set
// A(x) = {λ ≥ 0 : g(λ) ≥ 0} with g(λ) = Σ_k a_k·e^{-λ·s(t_k)}, computed by a
// certified scan — a rigorous tail bound picks the scan horizon, a
// Descartes-style bound on exponential sums counts the possible sign
// changes, and every root is narrowed by scalar bisection.

#include <optional>
#include <vector>

#include "profit/cashflow.hpp"
#include "profit/dfamily.hpp"
#include "profit/interval_set.hpp"
#include "profit/kernel.hpp"

namespace profit {

struct IrrOptions {
    double tol = default_tol;     // bisection width and boundary band in λ
    double lambda_max = 0.0;      // 0 = choose automatically via the tail bound
    kernel::Backend backend = kernel::Backend::Auto;
};

struct AcceptanceSet {
    IntervalSet set;              // {λ : g(λ) ≥ 0}; right ends may be +inf
    double lambda_max = 0.0;      // horizon beyond which sgn g is certified constant
    int sign_changes_bound = 0;   // Descartes bound: max # of sign changes of g
    int crossings_found = 0;      // actual sign crossings isolated by the scan
    bool undetermined = false;    // some boundary sat within tolerance of 0
    // λ values where g has a zero interior minimum inside a positive run
    // (acceptance set unaffected, but IRR possession fails there).
    std::vector<double> interior_tangencies;

    bool empty() const { return set.empty(); }
    bool is_whole_halfline() const;
};

AcceptanceSet acceptance_set(const DFamily& family, const CashFlow& x, IrrOptions opts = {});

// IRR(x) = r iff sgn g(λ) = sgn(r - λ) for all λ: acceptance set is [0, r]
// (or the single point {0} when r = 0) with g > 0 on [0, r). Returns the rate
// when possessed.
std::optional<double> possesses_irr(const DFamily& family, const CashFlow& x,
                                    IrrOptions opts = {});

// Closed form for two-transaction investments (-a at t, +b at τ), 0 < a ≤ b:
// λ = ln(b/a) / (s(τ) - s(t)). Throws input_error for any other shape.
double rr_closed_form(const DFamily& family, const CashFlow& x);

// Natural domain of the extended rate of return: A(x) empty, the whole
// half-line, or a single interval containing 0.
bool in_natural_domain(const DFamily& family, const CashFlow& x, IrrOptions opts = {});

// sup A(x) with sup ∅ = -inf; +inf when g never leaves the nonnegatives.
// Throws domain_error outside the natural domain.
double natural_extension_rr(const DFamily& family, const CashFlow& x, IrrOptions opts = {});

// Is A(x) regular closed (the closure of its interior)? False when the scan
// found an isolated acceptance point; Undetermined when a tangency or a
// within-tolerance boundary blocks certification.
Tri is_regular(const DFamily& family, const CashFlow& x, IrrOptions opts = {});

}  // namespace profit
