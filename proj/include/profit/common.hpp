#pragma once
// Shared small types: three-valued logic, comparison relations, error
// hierarchy, and numeric helpers used across the library.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace profit {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Errors that map to CLI exit code 1: malformed files, invalid parameters,
// violated operation preconditions.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Errors that map to CLI exit code 2: a metric evaluated outside its natural
// domain (incomparability made manifest), or an inconsistent derived state.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Three-valued verdict for numerically decided predicates. Undetermined means
// the data sits within tolerance of a boundary, so neither answer is safe.
enum class Tri { False, True, Undetermined };

inline const char* to_string(Tri t) {
    switch (t) {
        case Tri::False: return "false";
        case Tri::True: return "true";
        default: return "undetermined";
    }
}

// Outcome of comparing two projects under a scenario set.
enum class Relation { GreaterEq, LessEq, Equivalent, Incomparable, Undetermined };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::GreaterEq: return "greater_eq";
        case Relation::LessEq: return "less_eq";
        case Relation::Equivalent: return "equivalent";
        case Relation::Incomparable: return "incomparable";
        default: return "undetermined";
    }
}

struct ComparabilityResult {
    Relation relation = Relation::Undetermined;
    // True when the winning side has a witness functional accepting it while
    // rejecting the other project (the asymmetric part of the preorder).
    bool strict = false;
    // Label of a functional accepting x but rejecting y, if one was found.
    std::optional<std::string> witness_x_only;
    // Label of a functional accepting y but rejecting x, if one was found.
    std::optional<std::string> witness_y_only;
};

inline int sgn(double v) { return (v > 0) - (v < 0); }

// Default tolerance: λ-space bisection width and NPV boundary band.
inline constexpr double default_tol = 1e-9;

// Neumaier's compensated summation: exact-order-insensitive to first order,
// used wherever cash-flow sums must stay trustworthy near sign boundaries.
class NeumaierAccumulator {
  public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace profit
