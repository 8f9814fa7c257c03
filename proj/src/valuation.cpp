#include "profit/valuation.hpp"

#include <cmath>

namespace profit {

double npv(const Discount& alpha, const CashFlow& x) {
    NeumaierAccumulator acc;
    for (const auto& tx : x.transactions()) acc.add(tx.amount * alpha(tx.time));
    return acc.value();
}

double npv_truncated(const Discount& alpha, const CashFlow& x, double tau) {
    if (!(tau >= 0.0)) throw input_error("npv_truncated: tau must be nonnegative");
    NeumaierAccumulator acc;
    for (const auto& tx : x.transactions()) {
        if (tx.time > tau) break;
        acc.add(tx.amount * alpha(tx.time));
    }
    return acc.value();
}

double npv_left_limit_truncated(const Discount& alpha, const CashFlow& x, double tau) {
    if (!(tau > 0.0)) throw input_error("npv_left_limit_truncated: tau must be positive");
    NeumaierAccumulator acc;
    for (const auto& tx : x.transactions()) {
        if (tx.time >= tau) break;
        acc.add(tx.amount * alpha(tx.time));
    }
    return acc.value();
}

double npv_mixed(const Discount& alpha, const CashFlow& x, double tau, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw input_error("npv_mixed: lambda must be in [0,1]");
    return lambda * npv_truncated(alpha, x, tau) +
           (1.0 - lambda) * npv_left_limit_truncated(alpha, x, tau);
}

double h_gamma(const Discount& alpha, const CashFlow& x, double gamma) {
    if (!(gamma >= 0.0)) throw input_error("h_gamma: gamma must be nonnegative");
    const double limit = alpha.right_limit_at_zero();
    if (limit > 0.0 && gamma * limit > 1.0 + 1e-15)
        throw input_error("h_gamma: gamma must not exceed 1/alpha(0+)");
    return gamma * npv(alpha, x) + (1.0 - gamma) * x.initial();
}

double intensity_npv(const Discount& alpha, const CashFlow& x, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw input_error("intensity_npv: lambda must be positive and finite");
    NeumaierAccumulator acc;
    for (const auto& tx : x.transactions()) acc.add(tx.amount * alpha(tx.time / lambda));
    return acc.value();
}

}  // namespace profit
