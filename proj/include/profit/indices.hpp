#pragma once
// Ratio-type profitability indices: PI, RI, the undiscounted return on
// investment, and their natural extensions through the extremal mixture
// functionals F̃ = G + (sup W̃)(F-G) and G̃ = G + (inf W̃)(F-G), where
// W̃ = {w : w·F + (1-w)·G is again an NPV functional}.

#include <optional>
#include <vector>

#include "profit/cashflow.hpp"
#include "profit/discount.hpp"

namespace profit {

// PI^F(x) = 1 - F(x)/x(0) when F(x) ≥ 0 and x(0) < 0 (RI against F^{(χ)}).
// nullopt when not possessed; α = χ rejected (F would equal G).
std::optional<double> pi(const Discount& alpha, const CashFlow& x);

// RI_G^F(x) = 1 - F(x)/G(x) when F(x) ≥ 0 and G(x) < 0; nullopt otherwise.
// F and G must be structurally distinct.
std::optional<double> ri(const Discount& f, const Discount& g, const CashFlow& x);

// π(x) = (x(+∞) - x(0))/(-x(0)), naturally extended: 0 when both x(+∞) and
// x(0) are negative, +∞ when both are nonnegative; throws domain_error on
// {x(+∞) < 0, x(0) ≥ 0}.
double undiscounted_pi_extension(const CashFlow& x);

struct TildeBounds {
    double w_inf = 0.0, w_sup = 1.0;                   // bounds from the given grid
    double w_inf_clamped = 0.0, w_sup_clamped = 1.0;   // revalidated on a 4x-refined grid
    std::vector<double> grid;                          // the grid actually used
};

// Outer approximation of W̃ from the linear constraints "w·α + (1-w)·β is
// nonnegative and nonincreasing" at grid times plus the jump constraint at
// 0+. Contains [0, 1] for any grid. Throws input_error when α and β coincide
// on the whole grid (W̃ would be unbounded and the grid uninformative).
TildeBounds tilde_bounds(const Discount& f, const Discount& g, std::vector<double> grid);

// RĪ via the extension table of F̃, G̃ signs, evaluated with the clamped
// bounds: F̃(x) = G(x) + w_sup·(F(x)-G(x)) and likewise for G̃. Throws
// domain_error on {F̃(x) < 0, G̃(x) ≥ 0}.
double ri_natural_extension(const Discount& f, const Discount& g, const CashFlow& x,
                            std::vector<double> grid);

// Characteristic grid: 0, the transaction times, and a geometric mesh
// reaching 4x past the last transaction.
std::vector<double> default_index_grid(const CashFlow& x);

}  // namespace profit
