#include "profit/discount.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

namespace profit {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw input_error(msg);
}

void require_finite(double v, const char* msg) {
    require(std::isfinite(v), msg);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

DiscountPtr share(Discount d) { return std::make_shared<const Discount>(std::move(d)); }

}  // namespace

Discount Discount::exponential(double rate) {
    require_finite(rate, "exponential discount: rate must be finite");
    require(rate >= 0.0, "exponential discount: rate must be nonnegative");
    return Discount(dsc::Exponential{rate});
}

Discount Discount::compound_annual(double rate) {
    require_finite(rate, "compound-annual discount: rate must be finite");
    require(rate >= 0.0,
            "compound-annual discount: rate must be nonnegative for a nonincreasing function");
    return Discount(dsc::CompoundAnnual{rate});
}

Discount Discount::constant_sensitivity(double rate, double beta) {
    require_finite(rate, "constant-sensitivity discount: rate must be finite");
    require_finite(beta, "constant-sensitivity discount: beta must be finite");
    require(rate >= 0.0, "constant-sensitivity discount: rate must be nonnegative");
    require(beta > 0.0, "constant-sensitivity discount: beta must be positive");
    return Discount(dsc::ConstantSensitivity{rate, beta});
}

Discount Discount::generalized_hyperbolic(double rate, double beta) {
    require_finite(rate, "generalized-hyperbolic discount: rate must be finite");
    require_finite(beta, "generalized-hyperbolic discount: beta must be finite");
    require(rate >= 0.0, "generalized-hyperbolic discount: rate must be nonnegative");
    require(beta > 0.0, "generalized-hyperbolic discount: beta must be positive");
    return Discount(dsc::GeneralizedHyperbolic{rate, beta});
}

Discount Discount::power_of_base(Discount base, double exponent) {
    require_finite(exponent, "power discount: exponent must be finite");
    require(exponent >= 0.0, "power discount: exponent must be nonnegative");
    require(base.strictly_decreasing_positive(),
            "power discount: base must be strictly decreasing and positive");
    return Discount(dsc::PowerOfBase{share(std::move(base)), exponent});
}

Discount Discount::unit() { return Discount(dsc::Unit{}); }

Discount Discount::impatient() { return Discount(dsc::Impatient{}); }

Discount Discount::truncated(Discount inner, double horizon, bool closed) {
    require_finite(horizon, "truncated discount: horizon must be finite");
    require(horizon > 0.0, "truncated discount: horizon must be positive");
    return Discount(dsc::Truncated{share(std::move(inner)), horizon, closed});
}

Discount Discount::chi_mix(Discount inner, double gamma) {
    require_finite(gamma, "chi-mix discount: gamma must be finite");
    require(gamma >= 0.0, "chi-mix discount: gamma must be nonnegative");
    const double limit = inner.right_limit_at_zero();
    if (limit > 0.0)
        require(gamma * limit <= 1.0 + 1e-15,
                "chi-mix discount: gamma must not exceed 1/inner(0+)");
    return Discount(dsc::ChiMix{share(std::move(inner)), gamma});
}

Discount Discount::intensity(Discount inner, double factor) {
    require_finite(factor, "intensity discount: factor must be finite");
    require(factor > 0.0, "intensity discount: factor must be positive");
    return Discount(dsc::Intensity{share(std::move(inner)), factor});
}

Discount Discount::grid_sampled(std::vector<double> times, std::vector<double> values) {
    require(!times.empty() && times.size() == values.size(),
            "grid discount: times and values must be nonempty and equally sized");
    require(times.front() == 0.0, "grid discount: first time must be 0");
    require(values.front() == 1.0, "grid discount: value at 0 must be 1");
    for (std::size_t i = 0; i < times.size(); ++i) {
        require_finite(times[i], "grid discount: times must be finite");
        require_finite(values[i], "grid discount: values must be finite");
        require(values[i] >= 0.0, "grid discount: values must be nonnegative");
        if (i > 0) {
            require(times[i] > times[i - 1], "grid discount: times must be strictly increasing");
            require(values[i] <= values[i - 1], "grid discount: values must be nonincreasing");
        }
    }
    return Discount(dsc::GridSampled{std::move(times), std::move(values)});
}

double Discount::operator()(double t) const {
    if (!(t >= 0.0)) throw input_error("discount function evaluated at negative time");
    return std::visit(
        [t](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, dsc::Exponential>) {
                return std::exp(-n.rate * t);
            } else if constexpr (std::is_same_v<T, dsc::CompoundAnnual>) {
                return std::pow(1.0 + n.rate, -t);
            } else if constexpr (std::is_same_v<T, dsc::ConstantSensitivity>) {
                return std::exp(-n.rate * std::pow(t, n.beta));
            } else if constexpr (std::is_same_v<T, dsc::GeneralizedHyperbolic>) {
                return std::pow(1.0 + n.beta * t, -n.rate / n.beta);
            } else if constexpr (std::is_same_v<T, dsc::PowerOfBase>) {
                return std::pow((*n.base)(t), n.exponent);
            } else if constexpr (std::is_same_v<T, dsc::Unit>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, dsc::Impatient>) {
                return t == 0.0 ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, dsc::Truncated>) {
                if (t < n.horizon || (n.closed && t == n.horizon)) return (*n.inner)(t);
                return 0.0;
            } else if constexpr (std::is_same_v<T, dsc::ChiMix>) {
                if (t == 0.0) return 1.0;
                return n.gamma * (*n.inner)(t);
            } else if constexpr (std::is_same_v<T, dsc::Intensity>) {
                return (*n.inner)(t / n.factor);
            } else {
                static_assert(std::is_same_v<T, dsc::GridSampled>);
                if (t > n.times.back())
                    throw input_error("grid discount: evaluation beyond the last grid time");
                auto it = std::upper_bound(n.times.begin(), n.times.end(), t);
                return n.values[static_cast<std::size_t>(it - n.times.begin()) - 1];
            }
        },
        node_);
}

double Discount::right_limit_at_zero() const {
    return std::visit(
        [](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, dsc::PowerOfBase>) {
                return std::pow(n.base->right_limit_at_zero(), n.exponent);
            } else if constexpr (std::is_same_v<T, dsc::Impatient>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, dsc::Truncated>) {
                return n.inner->right_limit_at_zero();
            } else if constexpr (std::is_same_v<T, dsc::ChiMix>) {
                return n.gamma * n.inner->right_limit_at_zero();
            } else if constexpr (std::is_same_v<T, dsc::Intensity>) {
                return n.inner->right_limit_at_zero();
            } else if constexpr (std::is_same_v<T, dsc::GridSampled>) {
                return n.values.front();
            } else {
                return 1.0;  // the smooth families and Unit are continuous at 0
            }
        },
        node_);
}

double Discount::support_supremum() const {
    return std::visit(
        [](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, dsc::PowerOfBase>) {
                return n.exponent == 0.0 ? inf : n.base->support_supremum();
            } else if constexpr (std::is_same_v<T, dsc::Impatient>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, dsc::Truncated>) {
                return std::min(n.horizon, n.inner->support_supremum());
            } else if constexpr (std::is_same_v<T, dsc::ChiMix>) {
                return n.gamma == 0.0 ? 0.0 : n.inner->support_supremum();
            } else if constexpr (std::is_same_v<T, dsc::Intensity>) {
                return n.factor * n.inner->support_supremum();
            } else if constexpr (std::is_same_v<T, dsc::GridSampled>) {
                for (std::size_t i = 0; i < n.values.size(); ++i)
                    if (n.values[i] == 0.0) return n.times[i];
                return inf;
            } else {
                return inf;  // every closed-form family stays positive
            }
        },
        node_);
}

bool Discount::is_chi() const {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, dsc::Impatient>) {
                return true;
            } else if constexpr (std::is_same_v<T, dsc::ChiMix>) {
                return n.gamma == 0.0 || n.inner->is_chi();
            } else if constexpr (std::is_same_v<T, dsc::Intensity>) {
                return n.inner->is_chi();
            } else {
                return false;
            }
        },
        node_);
}

bool Discount::strictly_decreasing_positive() const {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, dsc::Exponential> ||
                          std::is_same_v<T, dsc::CompoundAnnual> ||
                          std::is_same_v<T, dsc::ConstantSensitivity> ||
                          std::is_same_v<T, dsc::GeneralizedHyperbolic>) {
                return n.rate > 0.0;
            } else if constexpr (std::is_same_v<T, dsc::PowerOfBase>) {
                return n.exponent > 0.0 && n.base->strictly_decreasing_positive();
            } else if constexpr (std::is_same_v<T, dsc::ChiMix>) {
                return n.gamma > 0.0 && n.inner->strictly_decreasing_positive();
            } else if constexpr (std::is_same_v<T, dsc::Intensity>) {
                return n.inner->strictly_decreasing_positive();
            } else {
                return false;  // Unit, Impatient, Truncated, GridSampled
            }
        },
        node_);
}

bool Discount::smooth_strictly_decreasing() const {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, dsc::Exponential> ||
                          std::is_same_v<T, dsc::CompoundAnnual> ||
                          std::is_same_v<T, dsc::ConstantSensitivity> ||
                          std::is_same_v<T, dsc::GeneralizedHyperbolic>) {
                return n.rate > 0.0;
            } else if constexpr (std::is_same_v<T, dsc::PowerOfBase>) {
                return n.exponent > 0.0 && n.base->smooth_strictly_decreasing();
            } else if constexpr (std::is_same_v<T, dsc::ChiMix>) {
                // differentiability is only required on (0,∞); the jump at 0 is fine
                return n.gamma > 0.0 && n.inner->smooth_strictly_decreasing();
            } else if constexpr (std::is_same_v<T, dsc::Intensity>) {
                return n.inner->smooth_strictly_decreasing();
            } else {
                return false;
            }
        },
        node_);
}

std::string Discount::describe() const {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, dsc::Exponential>) {
                return "exponential(rate=" + fmt(n.rate) + ")";
            } else if constexpr (std::is_same_v<T, dsc::CompoundAnnual>) {
                return "compound_annual(rate=" + fmt(n.rate) + ")";
            } else if constexpr (std::is_same_v<T, dsc::ConstantSensitivity>) {
                return "constant_sensitivity(rate=" + fmt(n.rate) + ",beta=" + fmt(n.beta) + ")";
            } else if constexpr (std::is_same_v<T, dsc::GeneralizedHyperbolic>) {
                return "generalized_hyperbolic(rate=" + fmt(n.rate) + ",beta=" + fmt(n.beta) + ")";
            } else if constexpr (std::is_same_v<T, dsc::PowerOfBase>) {
                return "power(base=" + n.base->describe() + ",exponent=" + fmt(n.exponent) + ")";
            } else if constexpr (std::is_same_v<T, dsc::Unit>) {
                return "unit";
            } else if constexpr (std::is_same_v<T, dsc::Impatient>) {
                return "impatient";
            } else if constexpr (std::is_same_v<T, dsc::Truncated>) {
                return "truncated(" + n.inner->describe() + ",horizon=" + fmt(n.horizon) +
                       (n.closed ? ",closed)" : ",open)");
            } else if constexpr (std::is_same_v<T, dsc::ChiMix>) {
                return "chi_mix(" + n.inner->describe() + ",gamma=" + fmt(n.gamma) + ")";
            } else if constexpr (std::is_same_v<T, dsc::Intensity>) {
                return "intensity(" + n.inner->describe() + ",factor=" + fmt(n.factor) + ")";
            } else {
                static_assert(std::is_same_v<T, dsc::GridSampled>);
                return "grid(" + std::to_string(n.times.size()) + " points)";
            }
        },
        node_);
}

bool operator==(const Discount& a, const Discount& b) {
    return std::visit(
        [](const auto& x, const auto& y) -> bool {
            using X = std::decay_t<decltype(x)>;
            using Y = std::decay_t<decltype(y)>;
            if constexpr (!std::is_same_v<X, Y>) {
                return false;
            } else if constexpr (std::is_same_v<X, dsc::Exponential> ||
                                 std::is_same_v<X, dsc::CompoundAnnual>) {
                return x.rate == y.rate;
            } else if constexpr (std::is_same_v<X, dsc::ConstantSensitivity> ||
                                 std::is_same_v<X, dsc::GeneralizedHyperbolic>) {
                return x.rate == y.rate && x.beta == y.beta;
            } else if constexpr (std::is_same_v<X, dsc::PowerOfBase>) {
                return x.exponent == y.exponent && *x.base == *y.base;
            } else if constexpr (std::is_same_v<X, dsc::Unit> ||
                                 std::is_same_v<X, dsc::Impatient>) {
                return true;
            } else if constexpr (std::is_same_v<X, dsc::Truncated>) {
                return x.horizon == y.horizon && x.closed == y.closed && *x.inner == *y.inner;
            } else if constexpr (std::is_same_v<X, dsc::ChiMix>) {
                return x.gamma == y.gamma && *x.inner == *y.inner;
            } else if constexpr (std::is_same_v<X, dsc::Intensity>) {
                return x.factor == y.factor && *x.inner == *y.inner;
            } else {
                static_assert(std::is_same_v<X, dsc::GridSampled>);
                return x.times == y.times && x.values == y.values;
            }
        },
        a.node_, b.node_);
}

}  // namespace profit
