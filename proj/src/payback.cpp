#include "profit/payback.hpp"

#include <cmath>
#include <vector>

#include "profit/valuation.hpp"

namespace profit {

namespace {

// Piecewise-constant representation of τ ↦ G_τ(x): value g0 = x(0) on
// [0, t₁) and value[i] on [time[i], time[i+1]) (value.back() = F(x)).
struct Pieces {
    double g0 = 0.0;
    std::vector<double> time;
    std::vector<double> value;

    double final_value() const { return value.empty() ? g0 : value.back(); }
    double left_limit(std::size_t i) const { return i == 0 ? g0 : value[i - 1]; }
};

Pieces cumulative(const Discount& alpha, const CashFlow& x) {
    Pieces p;
    p.g0 = x.initial();
    NeumaierAccumulator acc;
    acc.add(p.g0);
    for (const auto& tx : x.transactions()) {
        if (tx.time == 0.0) continue;
        acc.add(tx.amount * alpha(tx.time));
        p.time.push_back(tx.time);
        p.value.push_back(acc.value());
    }
    return p;
}

bool near_zero(const Pieces& p, const CashFlow& x, double tol) {
    const double band = tol * std::max(1.0, x.sup_norm());
    if (p.g0 != 0.0 && std::abs(p.g0) <= band) return true;
    for (double v : p.value)
        if (v != 0.0 && std::abs(v) <= band) return true;
    return false;
}

// Index of the single switch to nonnegativity, if the possession pattern
// holds: g0 < 0, value[i] < 0 for i < k, value[i] >= 0 for i >= k.
std::optional<std::size_t> switch_index(const Pieces& p) {
    if (!(p.g0 < 0.0)) return std::nullopt;
    std::size_t k = 0;
    while (k < p.value.size() && p.value[k] < 0.0) ++k;
    if (k == p.value.size()) return std::nullopt;  // never recovers
    for (std::size_t j = k; j < p.value.size(); ++j)
        if (p.value[j] < 0.0) return std::nullopt;  // relapse: multiple switches
    return k;
}

}  // namespace

std::optional<double> dpp(const Discount& alpha, const CashFlow& x, double tol, bool* boundary) {
    const Pieces p = cumulative(alpha, x);
    if (boundary) *boundary = near_zero(p, x, tol);
    const auto k = switch_index(p);
    if (!k) return std::nullopt;
    return p.time[*k];
}

std::optional<double> pp(const CashFlow& x, double tol, bool* boundary) {
    return dpp(Discount::unit(), x, tol, boundary);
}

std::optional<RefinedDpp> refined_dpp(const Discount& alpha, const CashFlow& x, double tol,
                                      bool* boundary) {
    const Pieces p = cumulative(alpha, x);
    if (boundary) *boundary = near_zero(p, x, tol);
    const auto k = switch_index(p);
    if (!k) return std::nullopt;
    const double g_tau = p.value[*k];
    const double g_before = p.left_limit(*k);  // strictly negative by the pattern
    return RefinedDpp{p.time[*k], g_before / (g_before - g_tau)};
}

std::optional<double> dpp_star(const Discount& alpha, const CashFlow& x, double tol,
                               bool* boundary) {
    for (const auto& tx : x.transactions())
        if (tx.time != std::floor(tx.time))
            throw input_error("dpp_star: requires a discrete project (integer transaction times)");
    const auto r = refined_dpp(alpha, x, tol, boundary);
    if (!r) return std::nullopt;
    return r->tau - 1.0 + r->lambda;
}

DppDomainClass classify_dpp_domain(const Discount& alpha, const CashFlow& x, double tol) {
    if (alpha.is_chi())
        throw input_error("classify_dpp_domain: alpha = chi admits no payback analysis");
    const Pieces p = cumulative(alpha, x);
    (void)tol;

    bool all_negative = p.g0 < 0.0;
    for (double v : p.value) all_negative = all_negative && v < 0.0;
    if (all_negative) return DppDomainClass::QMinus;

    if (switch_index(p)) return DppDomainClass::QPossesses;

    bool all_nonneg = p.g0 >= 0.0;
    for (double v : p.value) all_nonneg = all_nonneg && v >= 0.0;
    if (all_nonneg) {
        const double c = 1.0 / alpha.right_limit_at_zero();
        const double h = c * npv(alpha, x) + (1.0 - c) * x.initial();
        if (h >= 0.0) return DppDomainClass::QPlus;
    }
    return DppDomainClass::Outside;
}

double rdpp_natural_extension(const Discount& alpha, const CashFlow& x, double tol) {
    switch (classify_dpp_domain(alpha, x, tol)) {
        case DppDomainClass::QMinus: {
            // sup{γ ∈ [α(0+), 1] : H_{1/γ}(x) ≥ 0} - 1; H_{1/γ}(x) ≥ 0 is
            // equivalent to γ ≤ (F(x) - x(0))/(-x(0)) since x(0) < 0 here.
            const double x0 = x.initial();
            const double c = (npv(alpha, x) - x0) / (-x0);
            const double top = std::min(1.0, c);
            return top >= alpha.right_limit_at_zero() ? top - 1.0 : -inf;
        }
        case DppDomainClass::QPossesses: return 1.0 / *dpp(alpha, x, tol);
        case DppDomainClass::QPlus: return inf;
        default:
            throw domain_error(
                "rdpp_natural_extension: the cumulative value changes sign more than once; "
                "the project lies outside the natural domain of RDPP");
    }
}

std::optional<Relation> lex_compare_refined(const Discount& alpha, const CashFlow& x,
                                            const CashFlow& y, double tol) {
    const auto rx = refined_dpp(alpha, x, tol);
    const auto ry = refined_dpp(alpha, y, tol);
    if (!rx || !ry) return std::nullopt;
    if (rx->tau < ry->tau) return Relation::GreaterEq;
    if (rx->tau > ry->tau) return Relation::LessEq;
    if (std::abs(rx->lambda - ry->lambda) <= tol) return Relation::Equivalent;
    return rx->lambda < ry->lambda ? Relation::GreaterEq : Relation::LessEq;
}

std::optional<double> hajdasinski_recovery_time(const Discount& alpha, const CashFlow& x) {
    const Pieces p = cumulative(alpha, x);
    if (p.final_value() < 0.0) return std::nullopt;
    // Walk back to the last strictly negative piece; recovery starts at the
    // next breakpoint (0 when no piece is ever negative). The final piece is
    // nonnegative here, so i + 1 is always a valid breakpoint index.
    for (std::size_t i = p.value.size(); i-- > 0;)
        if (p.value[i] < 0.0) return p.time[i + 1];
    if (p.g0 < 0.0) return p.time.front();
    return 0.0;
}

}  // namespace profit
