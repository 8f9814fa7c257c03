#include "profit/dfamily.hpp"

#include <cmath>
#include <cstdio>

namespace profit {

DFamily DFamily::exponential() { return DFamily(Kind::Exponential, 0.0, nullptr); }

DFamily DFamily::power(Discount base) {
    if (!base.strictly_decreasing_positive())
        throw input_error("power family: base must be strictly decreasing and positive");
    return DFamily(Kind::Power, 0.0, std::make_shared<const Discount>(std::move(base)));
}

DFamily DFamily::constant_sensitivity(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw input_error("constant-sensitivity family: beta must be positive and finite");
    return DFamily(Kind::ConstantSensitivity, beta, nullptr);
}

DFamily DFamily::generalized_hyperbolic(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw input_error("generalized-hyperbolic family: beta must be positive and finite");
    return DFamily(Kind::GeneralizedHyperbolic, beta, nullptr);
}

Discount DFamily::member(double lambda) const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw input_error("D-family member: lambda must be nonnegative and finite");
    switch (kind_) {
        case Kind::Exponential: return Discount::exponential(lambda);
        case Kind::Power: return Discount::power_of_base(*base_, lambda);
        case Kind::ConstantSensitivity: return Discount::constant_sensitivity(lambda, beta_);
        default: return Discount::generalized_hyperbolic(lambda, beta_);
    }
}

double DFamily::transformed_time(double t) const {
    if (!(t >= 0.0)) throw input_error("D-family transform: time must be nonnegative");
    switch (kind_) {
        case Kind::Exponential: return t;
        case Kind::Power: return -std::log((*base_)(t));
        case Kind::ConstantSensitivity: return std::pow(t, beta_);
        default: return std::log1p(beta_ * t) / beta_;
    }
}

kernel::Profile DFamily::profile(const CashFlow& x) const {
    kernel::Profile p;
    p.s.reserve(x.size());
    p.a.reserve(x.size());
    for (const auto& tx : x.transactions()) {
        const double s = transformed_time(tx.time);
        if (!std::isfinite(s))
            throw input_error("D-family profile: transformed time overflows (base support ends)");
        p.s.push_back(s);
        p.a.push_back(tx.amount);
    }
    return p;
}

std::string DFamily::describe() const {
    char buf[64];
    switch (kind_) {
        case Kind::Exponential: return "exponential_family";
        case Kind::Power: return "power_family(base=" + base_->describe() + ")";
        case Kind::ConstantSensitivity:
            std::snprintf(buf, sizeof buf, "constant_sensitivity_family(beta=%.9g)", beta_);
            return buf;
        default:
            std::snprintf(buf, sizeof buf, "hyperbolic_family(beta=%.9g)", beta_);
            return buf;
    }
}

bool operator==(const DFamily& a, const DFamily& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
        case DFamily::Kind::Exponential: return true;
        case DFamily::Kind::Power: return *a.base_ == *b.base_;
        default: return a.beta_ == b.beta_;
    }
}

double g_eval(const DFamily& family, const CashFlow& x, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw input_error("g_eval: lambda must be nonnegative and finite");
    return kernel::profile_eval(family.profile(x), lambda);
}

}  // namespace profit
