#pragma once
// Finite unions of closed intervals on the extended real line (right
// endpoints may be +inf). Canonical form: sorted, pairwise disjoint with
// strictly positive gaps, so a closed interval is covered iff a single
// member covers it. Degenerate intervals (lo == hi) are isolated points.

#include <vector>

#include "profit/common.hpp"

namespace profit {

class IntervalSet {
  public:
    struct Interval {
        double lo, hi;
    };

    IntervalSet() = default;
    static IntervalSet whole(double lo, double hi) {
        IntervalSet s;
        s.add(lo, hi);
        return s;
    }

    void add(double lo, double hi);

    const std::vector<Interval>& intervals() const { return iv_; }
    bool empty() const { return iv_.empty(); }
    bool contains(double v) const;

    IntervalSet clipped(double lo, double hi) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet complement_within(double lo, double hi) const;
    // Each [a,b] widened to [a-eps, b+eps] (then re-merged).
    IntervalSet expanded(double eps) const;
    // Each [a,b] narrowed to [a+eps, b-eps]; emptied intervals vanish.
    // Infinite endpoints are unaffected.
    IntervalSet shrunk(double eps) const;

    // this ⊆ other? On failure *witness (if given) receives a point of
    // this \ other.
    bool subset_of(const IntervalSet& other, double* witness = nullptr) const;

  private:
    std::vector<Interval> iv_;
};

}  // namespace profit
