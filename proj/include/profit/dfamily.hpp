#pragma once
// One-parameter families {α_λ}_{λ≥0} of discount functions suitable for
// rate-of-return analysis: α_0 ≡ 1, λ ↦ α_λ(t) continuous and strictly
// decreasing to 0 for each t > 0. Every built-in family has the form
// α_λ(t) = e^{-λ·s(t)} for a strictly increasing transform s with s(0) = 0,
// which is what lets a single exponential-profile kernel serve them all.

#include <string>

#include "profit/cashflow.hpp"
#include "profit/discount.hpp"
#include "profit/kernel.hpp"

namespace profit {

class DFamily {
  public:
    enum class Kind { Exponential, Power, ConstantSensitivity, GeneralizedHyperbolic };

    // s(t) = t; α_λ = e^{-λt}.
    static DFamily exponential();
    // s(t) = -ln(base(t)); α_λ = base^λ. Base must be strictly decreasing
    // and positive.
    static DFamily power(Discount base);
    // s(t) = t^β, β > 0.
    static DFamily constant_sensitivity(double beta);
    // s(t) = ln(1+βt)/β, β > 0.
    static DFamily generalized_hyperbolic(double beta);

    Kind kind() const { return kind_; }
    double beta() const { return beta_; }
    // Power family only; nullptr otherwise.
    const DiscountPtr& power_base() const { return base_; }

    // The member α_λ as a Discount (λ ≥ 0; λ = 0 gives the unit function).
    Discount member(double lambda) const;
    // The transform s(t).
    double transformed_time(double t) const;
    // g(λ) = F^{(α_λ)}(x) as an exponential profile over s-times.
    kernel::Profile profile(const CashFlow& x) const;

    std::string describe() const;
    friend bool operator==(const DFamily& a, const DFamily& b);

  private:
    DFamily(Kind k, double beta, DiscountPtr base) : kind_(k), beta_(beta), base_(std::move(base)) {}
    Kind kind_;
    double beta_ = 0.0;
    DiscountPtr base_;  // Power only
};

// g(λ) for one λ, with compensated summation.
double g_eval(const DFamily& family, const CashFlow& x, double lambda);

}  // namespace profit
