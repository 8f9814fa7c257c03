#pragma once
// Three pointwise/structural dominance preorders on discount functions,
// checked on a user-supplied time grid and reported three-valued: a margin
// smaller than the tolerance yields Undetermined rather than a guess.

#include <span>

#include "profit/common.hpp"
#include "profit/discount.hpp"

namespace profit {

struct DominanceOptions {
    double tol = 1e-10;            // classification band, scaled by local magnitudes
    double fd_step_factor = 1e-4;  // finite-difference step as a fraction of the grid span
};

// alpha(t) >= beta(t) at every grid point.
Tri dominance_1(const Discount& alpha, const Discount& beta, std::span<const double> grid,
                DominanceOptions opts = {});

// supp(alpha) == supp(beta) and alpha/beta nondecreasing on the support.
Tri dominance_2(const Discount& alpha, const Discount& beta, std::span<const double> grid,
                DominanceOptions opts = {});

// alpha'/beta' nondecreasing (derivatives via central finite differences).
// Requires both functions differentiable with negative derivative; otherwise
// throws input_error.
Tri dominance_3(const Discount& alpha, const Discount& beta, std::span<const double> grid,
                DominanceOptions opts = {});

}  // namespace profit
