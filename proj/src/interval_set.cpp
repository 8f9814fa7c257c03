#include "profit/interval_set.hpp"

#include <algorithm>
#include <cmath>

namespace profit {

void IntervalSet::add(double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) return;
    auto it = std::lower_bound(iv_.begin(), iv_.end(), lo,
                               [](const Interval& a, double v) { return a.hi < v; });
    Interval merged{lo, hi};
    auto first = it;
    while (it != iv_.end() && it->lo <= merged.hi) {
        merged.lo = std::min(merged.lo, it->lo);
        merged.hi = std::max(merged.hi, it->hi);
        ++it;
    }
    it = iv_.erase(first, it);
    iv_.insert(it, merged);
}

bool IntervalSet::contains(double v) const {
    auto it = std::lower_bound(iv_.begin(), iv_.end(), v,
                               [](const Interval& a, double x) { return a.hi < x; });
    return it != iv_.end() && it->lo <= v;
}

IntervalSet IntervalSet::clipped(double lo, double hi) const {
    IntervalSet out;
    for (const auto& i : iv_) {
        const double a = std::max(i.lo, lo);
        const double b = std::min(i.hi, hi);
        if (a <= b) out.add(a, b);
    }
    return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    IntervalSet out;
    auto a = iv_.begin();
    auto b = other.iv_.begin();
    while (a != iv_.end() && b != other.iv_.end()) {
        const double lo = std::max(a->lo, b->lo);
        const double hi = std::min(a->hi, b->hi);
        if (lo <= hi) out.add(lo, hi);
        if (a->hi < b->hi)
            ++a;
        else
            ++b;
    }
    return out;
}

IntervalSet IntervalSet::complement_within(double lo, double hi) const {
    IntervalSet out;
    if (lo > hi) return out;
    double cursor = lo;
    // Distinguishes "cursor reached hi because a member covers it" from a
    // degenerate window no member touches; the latter is itself a gap.
    bool covered_at_cursor = false;
    for (const auto& i : clipped(lo, hi).iv_) {
        if (i.lo > cursor) out.add(cursor, i.lo);
        cursor = i.hi;
        covered_at_cursor = true;
        if (cursor >= hi) return out;
    }
    if (cursor < hi || !covered_at_cursor) out.add(cursor, hi);
    return out;
}

IntervalSet IntervalSet::expanded(double eps) const {
    IntervalSet out;
    for (const auto& i : iv_) out.add(i.lo - eps, i.hi + eps);
    return out;
}

IntervalSet IntervalSet::shrunk(double eps) const {
    IntervalSet out;
    for (const auto& i : iv_) {
        const double lo = std::isfinite(i.lo) ? i.lo + eps : i.lo;
        const double hi = std::isfinite(i.hi) ? i.hi - eps : i.hi;
        if (lo <= hi) out.add(lo, hi);
    }
    return out;
}

bool IntervalSet::subset_of(const IntervalSet& other, double* witness) const {
    for (const auto& i : iv_) {
        auto it = std::lower_bound(other.iv_.begin(), other.iv_.end(), i.lo,
                                   [](const Interval& a, double v) { return a.hi < v; });
        if (it == other.iv_.end() || it->lo > i.lo) {
            if (witness) *witness = i.lo;
            return false;
        }
        if (it->hi >= i.hi) continue;
        // Canonical disjointness: anything past it->hi up to the next member
        // (or up to i.hi) is uncovered.
        double upper = i.hi;
        auto next = std::next(it);
        if (next != other.iv_.end() && next->lo <= i.hi) upper = next->lo;
        if (witness) *witness = std::isfinite(upper) ? 0.5 * (it->hi + upper) : it->hi + 1.0;
        return false;
    }
    return true;
}

}  // namespace profit
