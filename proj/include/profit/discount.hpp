#pragma once
// Discount functions: nonnegative, nonincreasing α with α(0) = 1. Closed-form
// families plus truncated, χ-mixed, intensity-rescaled and grid-sampled
// constructions. Values are immutable and freely shareable.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "profit/common.hpp"

namespace profit {

class Discount;
using DiscountPtr = std::shared_ptr<const Discount>;

namespace dsc {

struct Exponential {
    double rate;  // t ↦ e^{-rate·t}
};
struct CompoundAnnual {
    double rate;  // t ↦ (1+rate)^{-t}
};
struct ConstantSensitivity {
    double rate, beta;  // t ↦ exp(-rate·t^beta)
};
struct GeneralizedHyperbolic {
    double rate, beta;  // t ↦ (1+beta·t)^{-rate/beta}
};
struct PowerOfBase {
    DiscountPtr base;  // strictly decreasing
    double exponent;   // t ↦ base(t)^exponent
};
struct Unit {};       // t ↦ 1
struct Impatient {};  // χ: 1 at t = 0, 0 afterwards
struct Truncated {
    DiscountPtr inner;
    double horizon;  // > 0
    bool closed;     // inner·I_[0,horizon] (closed) or inner·I_[0,horizon) (open)
};
struct ChiMix {
    DiscountPtr inner;
    double gamma;  // γ·inner + (1-γ)·χ, γ ∈ [0, 1/inner(0+)]
};
struct Intensity {
    DiscountPtr inner;
    double factor;  // t ↦ inner(t/factor)
};
struct GridSampled {
    std::vector<double> times;   // strictly increasing, starting at 0
    std::vector<double> values;  // right-continuous step values, values[0] = 1
};

}  // namespace dsc

class Discount {
  public:
    using Node = std::variant<dsc::Exponential, dsc::CompoundAnnual, dsc::ConstantSensitivity,
                              dsc::GeneralizedHyperbolic, dsc::PowerOfBase, dsc::Unit,
                              dsc::Impatient, dsc::Truncated, dsc::ChiMix, dsc::Intensity,
                              dsc::GridSampled>;

    static Discount exponential(double rate);
    static Discount compound_annual(double rate);
    static Discount constant_sensitivity(double rate, double beta);
    static Discount generalized_hyperbolic(double rate, double beta);
    static Discount power_of_base(Discount base, double exponent);
    static Discount unit();
    static Discount impatient();
    static Discount truncated(Discount inner, double horizon, bool closed);
    static Discount chi_mix(Discount inner, double gamma);
    static Discount intensity(Discount inner, double factor);
    static Discount grid_sampled(std::vector<double> times, std::vector<double> values);

    // α(t); throws input_error for t < 0 or grid extrapolation.
    double operator()(double t) const;
    // α(0+), computed analytically per variant.
    double right_limit_at_zero() const;
    // sup supp{α} = sup{t : α(t) > 0}; +∞ when the support is unbounded.
    double support_supremum() const;

    // α == χ (so F^{(α)}(x) = x(0)); several operations must reject χ.
    bool is_chi() const;
    // Strictly decreasing and positive on [0,∞): eligible as power-family base.
    bool strictly_decreasing_positive() const;
    // Differentiable with α' < 0 on the positive axis (dominance_3 precondition).
    bool smooth_strictly_decreasing() const;

    std::string describe() const;
    const Node& node() const { return node_; }

    friend bool operator==(const Discount& a, const Discount& b);

  private:
    explicit Discount(Node node) : node_(std::move(node)) {}
    Node node_;
};

}  // namespace profit
