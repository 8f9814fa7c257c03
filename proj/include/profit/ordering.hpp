#pragma once
// Scenario sets and the orderings they induce. A scenario set is a family of
// NPV functionals; a project x is at least as good as y when every functional
// accepting y also accepts x. Comparison is exact where the family admits a
// closed form (finite sets, truncation breakpoints, affine reduction
// intervals, one-parameter discount families via certified acceptance sets)
// and three-valued sampling elsewhere. Also: the convex-hull refinement test
// for finite sets, the sign preorder, a usury classifier, a ready-made
// rate-band x truncation-horizon scenario builder, and a property harness
// that checks ordering-axiom consequences on a sample of projects.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "profit/cashflow.hpp"
#include "profit/common.hpp"
#include "profit/dfamily.hpp"
#include "profit/discount.hpp"
#include "profit/kernel.hpp"
#include "profit/valuation.hpp"

namespace profit {

class ScenarioSet;

// One node of the scenario-set tree. Exposed so serialization and the CLI can
// inspect a set structurally; construct through the ScenarioSet factories,
// which validate.
struct ScenarioNode {
    enum class Kind {
        Finite,           // explicit list of functionals
        DFamilyRange,     // {F^(alpha_lambda) : lambda in [lo, hi]} for a D-family
        TruncationFamily, // {G_tau : tau in [lo, hi]} (+ untruncated F if flagged)
        ReductionFamily,  // {H_gamma : gamma in [lo, hi]}, gamma <= 1/alpha(0+)
        IntensityFamily,  // {U_lambda : lambda in [lo, hi]}, alpha(t/lambda)
        Product,          // parameter product: first child generates, the rest transform
        Union             // union of the children's functionals
    };

    Kind kind = Kind::Finite;
    std::vector<Npv> members;         // Finite (deduplicated by label)
    std::optional<DFamily> family;    // DFamilyRange
    std::optional<Discount> alpha;    // Truncation/Reduction/Intensity
    double lo = 0.0;                  // parameter range per kind
    double hi = 0.0;
    bool include_untruncated = false; // TruncationFamily: add F^(alpha) itself
    std::vector<ScenarioSet> children; // Product / Union
};

class ScenarioSet {
  public:
    using Kind = ScenarioNode::Kind;

    static ScenarioSet finite(std::vector<Npv> members);
    static ScenarioSet d_family_range(DFamily family, double lambda_lo, double lambda_hi);
    static ScenarioSet truncation_family(Discount alpha, double tau_lo, double tau_hi,
                                         bool include_untruncated);
    static ScenarioSet reduction_family(Discount alpha, double gamma_lo, double gamma_hi);
    static ScenarioSet intensity_family(Discount alpha, double lambda_lo, double lambda_hi);
    // components[0] generates base functionals (any kind); components[1..]
    // must be truncation/reduction/intensity families whose parameter ranges
    // transform them (their own alpha is a placeholder and is ignored).
    static ScenarioSet product(std::vector<ScenarioSet> components);
    static ScenarioSet union_of(std::vector<ScenarioSet> parts);

    Kind kind() const { return node_->kind; }
    const ScenarioNode& node() const { return *node_; }

    // Exactly one functional (totality of the induced ordering holds).
    bool is_singleton() const;

    std::string describe() const;

  private:
    explicit ScenarioSet(ScenarioNode node);
    std::shared_ptr<const ScenarioNode> node_;
};

struct CompareOptions {
    double tol = default_tol;  // NPV boundary band and parameter slack
    kernel::Backend backend = kernel::Backend::Auto;  // kernel for family scans
    int axis_samples = 65;     // initial grid for sampled parameter axes
};

// Weak profitability under a single functional: F(x) >= 0.
inline bool accepts(const Npv& f, const CashFlow& x) { return f(x) >= 0.0; }

// The scenario ordering: x >= y iff every functional in s accepting y also
// accepts x. Exact for finite/truncation/reduction/D-family sets; sampled
// (three-valued, refined near acceptance boundaries to parameter resolution
// 1e-6) for intensity axes and inside products. NPVs within tol of zero make
// a functional "boundary"; boundary functionals yield Undetermined rather
// than counting for either side, except when both projects produce the
// identical value (then the functional cannot separate them).
ComparabilityResult compare(const ScenarioSet& s, const CashFlow& x, const CashFlow& y,
                            const CompareOptions& opts = {});

// x >= y under the ordering induced by the closed convex hull of a finite
// set: feasibility of {lambda >= 0 : F(x) >= lambda F(y) for all F in s} by
// exact interval intersection.
bool compare_convex_hull_finite(const ScenarioSet& s, const CashFlow& x, const CashFlow& y);

// The sign preorder: x >= y iff sgn F(x) >= sgn F(y) for every functional.
// Same decision machinery as compare, applied to both the acceptance sets
// ({F >= 0}) and the rejection sets ({F <= 0}).
ComparabilityResult sign_compare(const ScenarioSet& s, const CashFlow& x, const CashFlow& y,
                                 const CompareOptions& opts = {});

enum class UsuryClass { NonUsurious, Usurious };

inline const char* to_string(UsuryClass u) {
    return u == UsuryClass::Usurious ? "usurious" : "non_usurious";
}

// A lender flow is usurious when its NPV under the 60%-per-period compound
// discount is nonnegative (the lender keeps a profit even at a 60% hurdle).
UsuryClass usury_classify(const CashFlow& lender_flow);

// Product of a compound-rate band {t -> (1+r)^-t : r in [rate_lo, rate_hi]}
// with truncation horizons tau in [tau_min, +inf); the horizon tau -> +inf is
// realized by including the untruncated functional explicitly.
ScenarioSet build_scenarios_section44(double rate_lo, double rate_hi, double tau_min);

// Results of the axiom-consequence checks. A "check" counts only when every
// comparison involved returned a definite relation; comparisons that come
// back Undetermined are skipped (and counted).
struct AxiomReport {
    int scale_checked = 0, scale_failed = 0;   // scale(x, c) ~ x
    int int_checked = 0, int_failed = 0;       // x >= y implies x >= x+y >= y
    int mon_checked = 0, mon_failed = 0;       // x >= y pointwise & y >= z implies x >= z
    int incomp_checked = 0, incomp_failed = 0; // 1_0 > x and 1_0 > -x implies x, -x incomparable
    int total_checked = 0, total_failed = 0;   // singleton sets are total
    int skipped_undetermined = 0;
    std::vector<std::string> failures;         // human-readable, capped at 32

    bool ok() const {
        return scale_failed + int_failed + mon_failed + incomp_failed + total_failed == 0;
    }
    int checked() const {
        return scale_checked + int_checked + mon_checked + incomp_checked + total_checked;
    }
};

AxiomReport axiom_harness(const ScenarioSet& s, const std::vector<CashFlow>& sample,
                          const CompareOptions& opts = {});

}  // namespace profit
