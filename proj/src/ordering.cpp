#include "profit/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <span>
#include <utility>

#include "profit/interval_set.hpp"
#include "profit/irr.hpp"

namespace profit {

namespace {

std::string fmt_range(double lo, double hi) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.6g, %.6g]", lo, hi);
    return buf;
}

double total_variation(const CashFlow& x) {
    double tv = 0.0;
    for (const auto& tx : x.transactions()) tv += std::abs(tx.amount);
    return tv;
}

// ---------------------------------------------------------------------------
// Verdicts. A PairVerdict carries the two implication directions of one
// scenario set: xy = "every functional accepting y accepts x" and the
// converse. Witness labels are recorded exactly when a direction is False.

enum class Mode { Accept, Sign };

struct PairVerdict {
    Tri xy = Tri::True;
    Tri yx = Tri::True;
    std::optional<std::string> wxy;  // functional accepting y but rejecting x
    std::optional<std::string> wyx;  // functional accepting x but rejecting y
};

void weaken(Tri& t) {
    if (t == Tri::True) t = Tri::Undetermined;
}

void conj_into(Tri& t, Tri o) {
    if (o == Tri::False)
        t = Tri::False;
    else if (o == Tri::Undetermined)
        weaken(t);
}

void merge(PairVerdict& v, const PairVerdict& o) {
    conj_into(v.xy, o.xy);
    conj_into(v.yx, o.yx);
    if (!v.wxy && o.wxy) v.wxy = o.wxy;
    if (!v.wyx && o.wyx) v.wyx = o.wyx;
}

bool settled(const PairVerdict& v) { return v.xy == Tri::False && v.yx == Tri::False; }

// Possible sign of a value under the boundary band. Exact zeros are genuine
// (compensated sums of exact data), everything else inside the band is noise.
std::pair<int, int> sign_range(double v, double band) {
    if (v == 0.0) return {0, 0};
    if (v >= band) return {1, 1};
    if (v <= -band) return {-1, -1};
    return {-1, 1};
}

// Accumulates one functional's verdict. A functional producing the identical
// value for both projects cannot separate them and is skipped, which keeps
// reflexivity exact even on the acceptance boundary.
void fold_member(Mode mode, PairVerdict& v, const std::string& label, double vx, double vy,
                 double band) {
    if (vx == vy) return;
    if (mode == Mode::Accept) {
        const int ax = (vx == 0.0 || vx >= band) ? 1 : (vx <= -band ? -1 : 0);
        const int ay = (vy == 0.0 || vy >= band) ? 1 : (vy <= -band ? -1 : 0);
        if (ay == 1 && ax == -1) {
            v.xy = Tri::False;
            if (!v.wxy) v.wxy = label;
        } else if (ay >= 0 && ax <= 0) {
            weaken(v.xy);
        }
        if (ax == 1 && ay == -1) {
            v.yx = Tri::False;
            if (!v.wyx) v.wyx = label;
        } else if (ax >= 0 && ay <= 0) {
            weaken(v.yx);
        }
    } else {
        const auto [xlo, xhi] = sign_range(vx, band);
        const auto [ylo, yhi] = sign_range(vy, band);
        if (xhi < ylo) {
            v.xy = Tri::False;
            if (!v.wxy) v.wxy = label;
        } else if (xlo < yhi) {
            weaken(v.xy);
        }
        if (yhi < xlo) {
            v.yx = Tri::False;
            if (!v.wyx) v.wyx = label;
        } else if (ylo < xhi) {
            weaken(v.yx);
        }
    }
}

// ---------------------------------------------------------------------------
// Interval-set inclusion for one-parameter families. "sub ⊆ target" is the
// direction check; a violation is only declared False after a scalar
// re-evaluation shows a definite sign pair at a concrete parameter.

using Eval = std::function<double(double)>;

struct Dir {
    Tri ok = Tri::True;
    std::optional<double> witness;  // parameter where sub accepts and target rejects
};

Dir check_inclusion(const IntervalSet& target, const IntervalSet& sub, double wlo, double whi,
                    const Eval& g_target, const Eval& g_sub, double band, bool noisy) {
    const IntervalSet uncovered = sub.intersect(target.complement_within(wlo, whi));
    if (uncovered.empty()) return {noisy ? Tri::Undetermined : Tri::True, std::nullopt};
    for (const auto& iv : uncovered.intervals()) {
        for (double w : {std::isinf(iv.hi) ? iv.lo + 1.0 : 0.5 * (iv.lo + iv.hi),
                         std::isinf(iv.hi) ? iv.lo + 10.0 : iv.lo + 0.75 * (iv.hi - iv.lo)}) {
            if (g_sub(w) >= band && g_target(w) <= -band) return {Tri::False, w};
        }
    }
    return {Tri::Undetermined, std::nullopt};
}

// ---------------------------------------------------------------------------
// Context threaded through the dispatch: tolerance, value band, kernel
// backend and the initial sampling density of parametric axes.

struct Ctx {
    double tol;
    double band;
    kernel::Backend backend;
    int samples;
};

PairVerdict dispatch(const ScenarioNode& n, const CashFlow& x, const CashFlow& y, Mode mode,
                     const Ctx& ctx, const std::string& prefix);

// --- D-family ranges: certified acceptance sets + interval inclusion. ------

std::string lambda_label(const std::string& prefix, const DFamily& fam, double lambda) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[lambda=%.9g]", lambda);
    return prefix + fam.describe() + buf;
}

PairVerdict dfamily_verdict(const ScenarioNode& n, const CashFlow& x, const CashFlow& y,
                            Mode mode, const Ctx& ctx, const std::string& prefix) {
    const DFamily& fam = *n.family;
    IrrOptions io;
    io.tol = ctx.tol;
    io.backend = ctx.backend;
    if (std::isfinite(n.hi)) io.lambda_max = n.hi;

    const auto clip = [&](const AcceptanceSet& a) { return a.set.clipped(n.lo, n.hi); };
    const AcceptanceSet rax = acceptance_set(fam, x, io);
    const AcceptanceSet ray = acceptance_set(fam, y, io);
    const Eval gx = [&](double l) { return g_eval(fam, x, l); };
    const Eval gy = [&](double l) { return g_eval(fam, y, l); };

    PairVerdict v;
    if (mode == Mode::Accept) {
        const bool noisy = rax.undetermined || ray.undetermined;
        const IntervalSet ax = clip(rax), ay = clip(ray);
        const Dir dxy = check_inclusion(ax, ay, n.lo, n.hi, gx, gy, ctx.band, noisy);
        const Dir dyx = check_inclusion(ay, ax, n.lo, n.hi, gy, gx, ctx.band, noisy);
        v.xy = dxy.ok;
        v.yx = dyx.ok;
        if (dxy.ok == Tri::False && dxy.witness) v.wxy = lambda_label(prefix, fam, *dxy.witness);
        if (dyx.ok == Tri::False && dyx.witness) v.wyx = lambda_label(prefix, fam, *dyx.witness);
        return v;
    }

    // Sign mode: sgn g_x ≥ sgn g_y on the window iff {g_y ≥ 0} ⊆ {g_x ≥ 0}
    // and {g_x ≤ 0} ⊆ {g_y ≤ 0}; the rejection sets are acceptance sets of
    // the negated projects.
    const AcceptanceSet rnx = acceptance_set(fam, x.negate(), io);
    const AcceptanceSet rny = acceptance_set(fam, y.negate(), io);
    const bool noisy =
        rax.undetermined || ray.undetermined || rnx.undetermined || rny.undetermined;
    const IntervalSet ax = clip(rax), ay = clip(ray), nx = clip(rnx), ny = clip(rny);
    const Eval gnx = [&](double l) { return -gx(l); };
    const Eval gny = [&](double l) { return -gy(l); };

    const Dir a_xy = check_inclusion(ax, ay, n.lo, n.hi, gx, gy, ctx.band, noisy);
    const Dir r_xy = check_inclusion(ny, nx, n.lo, n.hi, gny, gnx, ctx.band, noisy);
    v.xy = a_xy.ok;
    conj_into(v.xy, r_xy.ok);
    if (v.xy == Tri::False) {
        const std::optional<double> w = a_xy.ok == Tri::False ? a_xy.witness : r_xy.witness;
        if (w) v.wxy = lambda_label(prefix, fam, *w);
    }

    const Dir a_yx = check_inclusion(ay, ax, n.lo, n.hi, gy, gx, ctx.band, noisy);
    const Dir r_yx = check_inclusion(nx, ny, n.lo, n.hi, gnx, gny, ctx.band, noisy);
    v.yx = a_yx.ok;
    conj_into(v.yx, r_yx.ok);
    if (v.yx == Tri::False) {
        const std::optional<double> w = a_yx.ok == Tri::False ? a_yx.witness : r_yx.witness;
        if (w) v.wyx = lambda_label(prefix, fam, *w);
    }
    return v;
}

// --- Truncation families: exact scan over merged breakpoints. --------------

std::vector<double> truncation_reps(const CashFlow& x, const CashFlow& y, double lo, double hi) {
    std::set<double> later;
    for (const CashFlow* f : {&x, &y})
        for (const auto& tx : f->transactions())
            if (tx.time > lo && tx.time <= hi) later.insert(tx.time);
    std::vector<double> reps{lo};
    reps.insert(reps.end(), later.begin(), later.end());
    return reps;
}

PairVerdict truncation_verdict(const ScenarioNode& n, const CashFlow& x, const CashFlow& y,
                               Mode mode, const Ctx& ctx, const std::string& prefix) {
    const Discount& alpha = *n.alpha;
    PairVerdict v;
    char buf[64];
    for (double rep : truncation_reps(x, y, n.lo, n.hi)) {
        std::snprintf(buf, sizeof buf, "G[tau=%.9g]", rep);
        fold_member(mode, v, prefix + buf, npv_truncated(alpha, x, rep),
                    npv_truncated(alpha, y, rep), ctx.band);
        if (settled(v)) return v;
    }
    if (n.include_untruncated)
        fold_member(mode, v, prefix + "F[" + alpha.describe() + "]", npv(alpha, x), npv(alpha, y),
                    ctx.band);
    return v;
}

// --- Reduction families: H_γ is affine in γ, acceptance is one interval. ---

IntervalSet gamma_acceptance(const Discount& alpha, const CashFlow& f, double lo, double hi) {
    const double x0 = f.initial();
    const double slope = npv(alpha, f) - x0;  // H_γ = x0 + γ·slope
    IntervalSet s;
    if (slope == 0.0) {
        if (x0 >= 0.0) s.add(lo, hi);
        return s;
    }
    const double root = -x0 / slope;
    if (slope > 0.0) {
        if (hi >= root) s.add(std::max(lo, root), hi);
    } else {
        if (lo <= root) s.add(lo, std::min(hi, root));
    }
    return s;
}

std::string gamma_label(const std::string& prefix, double gamma) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "H[gamma=%.9g]", gamma);
    return prefix + buf;
}

PairVerdict reduction_verdict(const ScenarioNode& n, const CashFlow& x, const CashFlow& y,
                              Mode mode, const Ctx& ctx, const std::string& prefix) {
    const Discount& alpha = *n.alpha;
    const Eval hx = [&](double g) { return h_gamma(alpha, x, g); };
    const Eval hy = [&](double g) { return h_gamma(alpha, y, g); };
    const IntervalSet ax = gamma_acceptance(alpha, x, n.lo, n.hi);
    const IntervalSet ay = gamma_acceptance(alpha, y, n.lo, n.hi);

    PairVerdict v;
    if (mode == Mode::Accept) {
        const Dir dxy = check_inclusion(ax, ay, n.lo, n.hi, hx, hy, ctx.band, false);
        const Dir dyx = check_inclusion(ay, ax, n.lo, n.hi, hy, hx, ctx.band, false);
        v.xy = dxy.ok;
        v.yx = dyx.ok;
        if (dxy.ok == Tri::False && dxy.witness) v.wxy = gamma_label(prefix, *dxy.witness);
        if (dyx.ok == Tri::False && dyx.witness) v.wyx = gamma_label(prefix, *dyx.witness);
        return v;
    }

    const IntervalSet nx = gamma_acceptance(alpha, x.negate(), n.lo, n.hi);
    const IntervalSet ny = gamma_acceptance(alpha, y.negate(), n.lo, n.hi);
    const Eval hnx = [&](double g) { return -hx(g); };
    const Eval hny = [&](double g) { return -hy(g); };

    const Dir a_xy = check_inclusion(ax, ay, n.lo, n.hi, hx, hy, ctx.band, false);
    const Dir r_xy = check_inclusion(ny, nx, n.lo, n.hi, hny, hnx, ctx.band, false);
    v.xy = a_xy.ok;
    conj_into(v.xy, r_xy.ok);
    if (v.xy == Tri::False) {
        const std::optional<double> w = a_xy.ok == Tri::False ? a_xy.witness : r_xy.witness;
        if (w) v.wxy = gamma_label(prefix, *w);
    }

    const Dir a_yx = check_inclusion(ay, ax, n.lo, n.hi, hy, hx, ctx.band, false);
    const Dir r_yx = check_inclusion(nx, ny, n.lo, n.hi, hnx, hny, ctx.band, false);
    v.yx = a_yx.ok;
    conj_into(v.yx, r_yx.ok);
    if (v.yx == Tri::False) {
        const std::optional<double> w = a_yx.ok == Tri::False ? a_yx.witness : r_yx.witness;
        if (w) v.wyx = gamma_label(prefix, *w);
    }
    return v;
}

// --- Sampled parameter axes (intensity families, product transforms). ------

// Folds value pairs sampled along [lo, hi] into v, bisecting any cell whose
// endpoint classifications differ until the boundary is localized to
// parameter resolution 1e-6 (relative to the span).
void sampled_value_axis(PairVerdict& v, double lo, double hi, int n0,
                        const std::function<std::pair<double, double>(double)>& eval, Mode mode,
                        double band, const std::function<std::string(double)>& mk_label) {
    if (!(hi > lo)) {
        const auto [vx, vy] = eval(lo);
        fold_member(mode, v, mk_label(lo), vx, vy, band);
        return;
    }
    const double span = hi - lo;
    const double res = 1e-6 * std::max(1.0, span);

    struct Pt {
        double p, vx, vy;
    };
    const auto probe = [&](double p) {
        const auto [vx, vy] = eval(p);
        fold_member(mode, v, mk_label(p), vx, vy, band);
        return Pt{p, vx, vy};
    };
    const auto state = [&](const Pt& q) {
        return std::pair{sign_range(q.vx, band), sign_range(q.vy, band)};
    };

    const int n = std::max(3, n0);
    std::vector<Pt> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(probe(lo + span * i / (n - 1)));

    const std::function<void(const Pt&, const Pt&, int)> refine = [&](const Pt& a, const Pt& b,
                                                                      int depth) {
        if (b.p - a.p <= res || depth >= 48 || state(a) == state(b) || settled(v)) return;
        const Pt m = probe(0.5 * (a.p + b.p));
        refine(a, m, depth + 1);
        refine(m, b, depth + 1);
    };
    for (int i = 0; i + 1 < n && !settled(v); ++i) refine(pts[i], pts[i + 1], 0);
}

std::string intensity_label(const std::string& prefix, double lambda) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "U[lambda=%.9g]", lambda);
    return prefix + buf;
}

PairVerdict intensity_verdict(const ScenarioNode& n, const CashFlow& x, const CashFlow& y,
                              Mode mode, const Ctx& ctx, const std::string& prefix) {
    const Discount& alpha = *n.alpha;
    PairVerdict v;
    sampled_value_axis(
        v, n.lo, n.hi, ctx.samples,
        [&](double l) {
            return std::pair{intensity_npv(alpha, x, l), intensity_npv(alpha, y, l)};
        },
        mode, ctx.band, [&](double l) { return intensity_label(prefix, l); });
    return v;
}

// Same refinement skeleton, but each axis point yields a whole sub-verdict
// (used for product transforms, where the point spawns a recursive compare).
void sampled_verdict_axis(PairVerdict& v, double lo, double hi, int n0,
                          const std::function<PairVerdict(double)>& eval) {
    if (!(hi > lo)) {
        merge(v, eval(lo));
        return;
    }
    const double span = hi - lo;
    const double res = 1e-6 * std::max(1.0, span);

    struct Pt {
        double p;
        Tri xy, yx;
    };
    const auto probe = [&](double p) {
        const PairVerdict pv = eval(p);
        merge(v, pv);
        return Pt{p, pv.xy, pv.yx};
    };

    const int n = std::max(3, n0);
    std::vector<Pt> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(probe(lo + span * i / (n - 1)));

    const std::function<void(const Pt&, const Pt&, int)> refine = [&](const Pt& a, const Pt& b,
                                                                      int depth) {
        if (b.p - a.p <= res || depth >= 48 || settled(v)) return;
        if (a.xy == b.xy && a.yx == b.yx) return;
        const Pt m = probe(0.5 * (a.p + b.p));
        refine(a, m, depth + 1);
        refine(m, b, depth + 1);
    };
    for (int i = 0; i + 1 < n && !settled(v); ++i) refine(pts[i], pts[i + 1], 0);
}

// --- Products: the last component transforms the projects, recurse on the
// rest. Truncation axes are exact (flow truncation commutes with every NPV);
// reduction and intensity axes are sampled.

PairVerdict product_verdict(std::span<const ScenarioSet> comps, const CashFlow& x,
                            const CashFlow& y, Mode mode, const Ctx& ctx,
                            const std::string& prefix) {
    if (comps.size() == 1) return dispatch(comps.front().node(), x, y, mode, ctx, prefix);
    const ScenarioNode& last = comps.back().node();
    const std::span<const ScenarioSet> rest = comps.first(comps.size() - 1);
    char buf[64];

    PairVerdict v;
    switch (last.kind) {
        case ScenarioNode::Kind::TruncationFamily: {
            for (double rep : truncation_reps(x, y, last.lo, last.hi)) {
                std::snprintf(buf, sizeof buf, "G[tau=%.9g] o ", rep);
                merge(v, product_verdict(rest, x.truncate(rep), y.truncate(rep), mode, ctx,
                                         prefix + buf));
                if (settled(v)) return v;
            }
            if (last.include_untruncated)
                merge(v, product_verdict(rest, x, y, mode, ctx, prefix));
            return v;
        }
        case ScenarioNode::Kind::ReductionFamily: {
            sampled_verdict_axis(v, last.lo, last.hi, std::max(9, ctx.samples / 4),
                                 [&](double g) {
                                     std::snprintf(buf, sizeof buf, "H[gamma=%.9g] o ", g);
                                     return product_verdict(rest, x.reduce(g), y.reduce(g), mode,
                                                            ctx, prefix + buf);
                                 });
            return v;
        }
        case ScenarioNode::Kind::IntensityFamily: {
            sampled_verdict_axis(v, last.lo, last.hi, std::max(9, ctx.samples / 4),
                                 [&](double l) {
                                     std::snprintf(buf, sizeof buf, "U[lambda=%.9g] o ", l);
                                     return product_verdict(rest, x.time_scale(1.0 / l),
                                                            y.time_scale(1.0 / l), mode, ctx,
                                                            prefix + buf);
                                 });
            return v;
        }
        default:
            throw input_error(
                "product: transform components must be truncation, reduction, or intensity "
                "families");
    }
}

PairVerdict dispatch(const ScenarioNode& n, const CashFlow& x, const CashFlow& y, Mode mode,
                     const Ctx& ctx, const std::string& prefix) {
    switch (n.kind) {
        case ScenarioNode::Kind::Finite: {
            PairVerdict v;
            for (const Npv& m : n.members) {
                fold_member(mode, v, prefix + m.label, m(x), m(y), ctx.band);
                if (settled(v)) break;
            }
            return v;
        }
        case ScenarioNode::Kind::DFamilyRange:
            return dfamily_verdict(n, x, y, mode, ctx, prefix);
        case ScenarioNode::Kind::TruncationFamily:
            return truncation_verdict(n, x, y, mode, ctx, prefix);
        case ScenarioNode::Kind::ReductionFamily:
            return reduction_verdict(n, x, y, mode, ctx, prefix);
        case ScenarioNode::Kind::IntensityFamily:
            return intensity_verdict(n, x, y, mode, ctx, prefix);
        case ScenarioNode::Kind::Product:
            return product_verdict(std::span<const ScenarioSet>(n.children), x, y, mode, ctx,
                                   prefix);
        case ScenarioNode::Kind::Union: {
            PairVerdict v;
            for (const ScenarioSet& part : n.children) {
                merge(v, dispatch(part.node(), x, y, mode, ctx, prefix));
                if (settled(v)) break;
            }
            return v;
        }
    }
    throw input_error("unknown scenario kind");
}

ComparabilityResult assemble(const PairVerdict& v) {
    ComparabilityResult r;
    if (v.yx == Tri::False) r.witness_x_only = v.wyx;
    if (v.xy == Tri::False) r.witness_y_only = v.wxy;
    if (v.xy == Tri::True && v.yx == Tri::True) {
        r.relation = Relation::Equivalent;
    } else if (v.xy == Tri::True) {
        r.relation = Relation::GreaterEq;
        r.strict = v.yx == Tri::False;
    } else if (v.yx == Tri::True) {
        r.relation = Relation::LessEq;
        r.strict = v.xy == Tri::False;
    } else if (v.xy == Tri::False && v.yx == Tri::False) {
        r.relation = Relation::Incomparable;
    } else {
        r.relation = Relation::Undetermined;
    }
    return r;
}

Ctx make_ctx(const CashFlow& x, const CashFlow& y, const CompareOptions& opts) {
    if (!(opts.tol > 0.0) || !std::isfinite(opts.tol))
        throw input_error("compare: tol must be positive and finite");
    return Ctx{opts.tol, opts.tol * std::max({1.0, total_variation(x), total_variation(y)}),
               opts.backend, opts.axis_samples > 2 ? opts.axis_samples : 65};
}

}  // namespace

// ---------------------------------------------------------------------------
// ScenarioSet construction.

ScenarioSet::ScenarioSet(ScenarioNode node)
    : node_(std::make_shared<const ScenarioNode>(std::move(node))) {}

ScenarioSet ScenarioSet::finite(std::vector<Npv> members) {
    if (members.empty()) throw input_error("finite scenario set must have at least one member");
    ScenarioNode n;
    n.kind = Kind::Finite;
    std::set<std::string> seen;
    for (auto& m : members)
        if (seen.insert(m.label).second) n.members.push_back(std::move(m));
    return ScenarioSet(std::move(n));
}

ScenarioSet ScenarioSet::d_family_range(DFamily family, double lambda_lo, double lambda_hi) {
    if (!(lambda_lo >= 0.0) || !std::isfinite(lambda_lo) || !(lambda_hi >= lambda_lo))
        throw input_error("d_family_range: need 0 <= lambda_lo <= lambda_hi");
    ScenarioNode n;
    n.kind = Kind::DFamilyRange;
    n.family = std::move(family);
    n.lo = lambda_lo;
    n.hi = lambda_hi;
    return ScenarioSet(std::move(n));
}

ScenarioSet ScenarioSet::truncation_family(Discount alpha, double tau_lo, double tau_hi,
                                           bool include_untruncated) {
    if (!(tau_lo > 0.0) || !std::isfinite(tau_lo) || !(tau_hi >= tau_lo))
        throw input_error("truncation_family: need 0 < tau_lo <= tau_hi");
    ScenarioNode n;
    n.kind = Kind::TruncationFamily;
    n.alpha = std::move(alpha);
    n.lo = tau_lo;
    n.hi = tau_hi;
    n.include_untruncated = include_untruncated;
    return ScenarioSet(std::move(n));
}

ScenarioSet ScenarioSet::reduction_family(Discount alpha, double gamma_lo, double gamma_hi) {
    if (!(gamma_lo >= 0.0) || !std::isfinite(gamma_lo) || !(gamma_hi >= gamma_lo))
        throw input_error("reduction_family: need 0 <= gamma_lo <= gamma_hi");
    const double r0 = alpha.right_limit_at_zero();
    if (r0 > 0.0 && std::isfinite(gamma_hi) && gamma_hi * r0 > 1.0 + 1e-15)
        throw input_error("reduction_family: gamma_hi exceeds 1/alpha(0+)");
    if (r0 > 0.0 && !std::isfinite(gamma_hi))
        throw input_error("reduction_family: gamma_hi exceeds 1/alpha(0+)");
    ScenarioNode n;
    n.kind = Kind::ReductionFamily;
    n.alpha = std::move(alpha);
    n.lo = gamma_lo;
    n.hi = gamma_hi;
    return ScenarioSet(std::move(n));
}

ScenarioSet ScenarioSet::intensity_family(Discount alpha, double lambda_lo, double lambda_hi) {
    if (!(lambda_lo > 0.0) || !(lambda_hi >= lambda_lo) || !std::isfinite(lambda_hi))
        throw input_error("intensity_family: need 0 < lambda_lo <= lambda_hi < inf");
    ScenarioNode n;
    n.kind = Kind::IntensityFamily;
    n.alpha = std::move(alpha);
    n.lo = lambda_lo;
    n.hi = lambda_hi;
    return ScenarioSet(std::move(n));
}

ScenarioSet ScenarioSet::product(std::vector<ScenarioSet> components) {
    if (components.empty()) throw input_error("product scenario set must have components");
    for (std::size_t i = 1; i < components.size(); ++i) {
        const ScenarioNode& c = components[i].node();
        switch (c.kind) {
            case Kind::TruncationFamily:
            case Kind::IntensityFamily:
                break;
            case Kind::ReductionFamily:
                if (c.hi > 1.0)
                    throw input_error(
                        "product: reduction transform axes require gamma_hi <= 1");
                break;
            default:
                throw input_error(
                    "product: components after the first must be truncation, reduction, or "
                    "intensity families");
        }
    }
    ScenarioNode n;
    n.kind = Kind::Product;
    n.children = std::move(components);
    return ScenarioSet(std::move(n));
}

ScenarioSet ScenarioSet::union_of(std::vector<ScenarioSet> parts) {
    if (parts.empty()) throw input_error("union scenario set must have parts");
    ScenarioNode n;
    n.kind = Kind::Union;
    n.children = std::move(parts);
    return ScenarioSet(std::move(n));
}

bool ScenarioSet::is_singleton() const {
    const ScenarioNode& n = *node_;
    switch (n.kind) {
        case Kind::Finite:
            return n.members.size() == 1;
        case Kind::DFamilyRange:
        case Kind::ReductionFamily:
        case Kind::IntensityFamily:
            return n.lo == n.hi;
        case Kind::TruncationFamily:
            return n.lo == n.hi && !n.include_untruncated;
        case Kind::Product:
        case Kind::Union:
            return n.children.size() == 1 && n.children.front().is_singleton();
    }
    return false;
}

std::string ScenarioSet::describe() const {
    const ScenarioNode& n = *node_;
    switch (n.kind) {
        case Kind::Finite: {
            std::string s = "finite{";
            for (std::size_t i = 0; i < n.members.size(); ++i) {
                if (i) s += ", ";
                if (i == 6) {
                    s += "...";
                    break;
                }
                s += n.members[i].label;
            }
            return s + "}";
        }
        case Kind::DFamilyRange:
            return n.family->describe() + "-range" + fmt_range(n.lo, n.hi);
        case Kind::TruncationFamily:
            return "G_tau[" + n.alpha->describe() + "; tau in " + fmt_range(n.lo, n.hi) +
                   (n.include_untruncated ? " + untruncated]" : "]");
        case Kind::ReductionFamily:
            return "H_gamma[" + n.alpha->describe() + "; gamma in " + fmt_range(n.lo, n.hi) + "]";
        case Kind::IntensityFamily:
            return "U_lambda[" + n.alpha->describe() + "; lambda in " + fmt_range(n.lo, n.hi) +
                   "]";
        case Kind::Product: {
            std::string s = "product(";
            for (std::size_t i = 0; i < n.children.size(); ++i)
                s += (i ? " x " : "") + n.children[i].describe();
            return s + ")";
        }
        case Kind::Union: {
            std::string s = "union(";
            for (std::size_t i = 0; i < n.children.size(); ++i)
                s += (i ? ", " : "") + n.children[i].describe();
            return s + ")";
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Public entry points.

ComparabilityResult compare(const ScenarioSet& s, const CashFlow& x, const CashFlow& y,
                            const CompareOptions& opts) {
    const Ctx ctx = make_ctx(x, y, opts);
    if (x == y) {
        ComparabilityResult r;
        r.relation = Relation::Equivalent;
        return r;
    }
    return assemble(dispatch(s.node(), x, y, Mode::Accept, ctx, ""));
}

ComparabilityResult sign_compare(const ScenarioSet& s, const CashFlow& x, const CashFlow& y,
                                 const CompareOptions& opts) {
    const Ctx ctx = make_ctx(x, y, opts);
    if (x == y) {
        ComparabilityResult r;
        r.relation = Relation::Equivalent;
        return r;
    }
    return assemble(dispatch(s.node(), x, y, Mode::Sign, ctx, ""));
}

bool compare_convex_hull_finite(const ScenarioSet& s, const CashFlow& x, const CashFlow& y) {
    if (s.kind() != ScenarioSet::Kind::Finite)
        throw input_error("compare_convex_hull_finite requires a finite scenario set");
    double lo = 0.0, hi = inf;
    for (const Npv& f : s.node().members) {
        const double fx = f(x), fy = f(y);
        if (fy > 0.0)
            hi = std::min(hi, fx / fy);
        else if (fy < 0.0)
            lo = std::max(lo, fx / fy);
        else if (fx < 0.0)
            return false;
    }
    return lo <= hi;
}

UsuryClass usury_classify(const CashFlow& lender_flow) {
    // The hurdle test is NPV >= 0 at 60% compound. Values within the rounding
    // floor of the evaluation are treated as zero so decimal boundary cases
    // (exactly zero in the reals) classify on the usurious side of the rule.
    const double v = npv(Discount::compound_annual(0.6), lender_flow);
    const double floor = 32.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, total_variation(lender_flow));
    return v >= -floor ? UsuryClass::Usurious : UsuryClass::NonUsurious;
}

ScenarioSet build_scenarios_section44(double rate_lo, double rate_hi, double tau_min) {
    if (!(rate_lo >= 0.0) || !(rate_hi >= rate_lo) || !std::isfinite(rate_hi))
        throw input_error("build_scenarios_section44: need 0 <= rate_lo <= rate_hi < inf");
    if (!(tau_min > 0.0) || !std::isfinite(tau_min))
        throw input_error("build_scenarios_section44: tau_min must be positive and finite");
    // (1+r)^{-t} = e^{-t·ln(1+r)}: the compound band is an exponential-family
    // segment in the transformed rate.
    std::vector<ScenarioSet> comps;
    comps.push_back(ScenarioSet::d_family_range(DFamily::exponential(), std::log1p(rate_lo),
                                                std::log1p(rate_hi)));
    comps.push_back(ScenarioSet::truncation_family(Discount::unit(), tau_min, inf, true));
    return ScenarioSet::product(std::move(comps));
}

// ---------------------------------------------------------------------------
// Axiom-consequence harness.

namespace {

bool holds_geq(const ComparabilityResult& r) {
    return r.relation == Relation::GreaterEq || r.relation == Relation::Equivalent;
}

// Definitely not x >= y: the xy direction was falsified.
bool refutes_geq(const ComparabilityResult& r) {
    return r.relation == Relation::Incomparable ||
           (r.relation == Relation::LessEq && r.strict);
}

// Both directions settled definitively. Non-strict GreaterEq/LessEq means one
// direction stayed undetermined, so the verdict cannot confirm or refute an
// expected equivalence/incomparability and must be skipped.
bool definite(const ComparabilityResult& r) {
    switch (r.relation) {
        case Relation::Equivalent:
        case Relation::Incomparable:
            return true;
        case Relation::GreaterEq:
        case Relation::LessEq:
            return r.strict;
        default:
            return false;
    }
}

void record(AxiomReport& rep, const char* what, std::size_t i, std::size_t j, std::size_t k) {
    if (rep.failures.size() >= 32) return;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s failed on sample indices (%zu, %zu, %zu)", what, i, j, k);
    rep.failures.push_back(buf);
}

}  // namespace

AxiomReport axiom_harness(const ScenarioSet& s, const std::vector<CashFlow>& sample,
                          const CompareOptions& opts) {
    if (sample.empty()) throw input_error("axiom_harness: sample must be nonempty");
    AxiomReport rep;
    const std::size_t n = sample.size();
    const auto cmp = [&](const CashFlow& a, const CashFlow& b) { return compare(s, a, b, opts); };

    // Scale invariance: scale(x, c) ~ x.
    for (std::size_t i = 0; i < n; ++i) {
        for (double c : {0.5, 2.0, 7.25}) {
            const ComparabilityResult r = cmp(sample[i].scale(c), sample[i]);
            if (!definite(r)) {
                ++rep.skipped_undetermined;
                continue;
            }
            ++rep.scale_checked;
            if (r.relation != Relation::Equivalent) {
                ++rep.scale_failed;
                record(rep, "scale invariance", i, i, i);
            }
        }
    }

    // Deterministic pair subsample keeps large harness runs tractable.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (n <= 24) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) pairs.emplace_back(i, j);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k : {std::size_t{1}, std::size_t{3}, std::size_t{7}})
                pairs.emplace_back(i, (i + k) % n);
    }

    for (const auto& [i, j] : pairs) {
        const CashFlow& x = sample[i];
        const CashFlow& y = sample[j];
        const ComparabilityResult rxy = cmp(x, y);

        // Totality of singleton scenario sets.
        if (s.is_singleton()) {
            if (rxy.relation == Relation::Undetermined) {
                ++rep.skipped_undetermined;
            } else {
                ++rep.total_checked;
                if (rxy.relation == Relation::Incomparable) {
                    ++rep.total_failed;
                    record(rep, "singleton totality", i, j, j);
                }
            }
        }

        // The sandwich x >= x+y >= y for comparable pairs.
        if (holds_geq(rxy)) {
            const CashFlow xy = combine(x, y);
            for (const ComparabilityResult& r : {cmp(x, xy), cmp(xy, y)}) {
                if (refutes_geq(r)) {
                    ++rep.int_checked;
                    ++rep.int_failed;
                    record(rep, "sandwich x >= x+y >= y", i, j, j);
                } else if (holds_geq(r)) {
                    ++rep.int_checked;
                } else {
                    ++rep.skipped_undetermined;
                }
            }
        }
    }

    // Monotonicity: x >= y pointwise and y >= z implies x >= z.
    const std::size_t tn = std::min<std::size_t>(n, 12);
    for (std::size_t i = 0; i < tn; ++i) {
        for (std::size_t j = 0; j < tn; ++j) {
            if (j == i || !combine(sample[i], sample[j].negate()).in_P_plus()) continue;
            for (std::size_t k = 0; k < tn; ++k) {
                if (k == i || k == j) continue;
                if (!holds_geq(cmp(sample[j], sample[k]))) continue;
                const ComparabilityResult r = cmp(sample[i], sample[k]);
                if (refutes_geq(r)) {
                    ++rep.mon_checked;
                    ++rep.mon_failed;
                    record(rep, "monotonicity", i, j, k);
                } else if (holds_geq(r)) {
                    ++rep.mon_checked;
                } else {
                    ++rep.skipped_undetermined;
                }
            }
        }
    }

    // If 1_0 strictly beats both x and -x, then x and -x are incomparable.
    const CashFlow one = CashFlow::single(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const CashFlow neg = sample[i].negate();
        const ComparabilityResult r1 = cmp(one, sample[i]);
        const ComparabilityResult r2 = cmp(one, neg);
        if (!(r1.relation == Relation::GreaterEq && r1.strict) ||
            !(r2.relation == Relation::GreaterEq && r2.strict))
            continue;
        const ComparabilityResult r = cmp(sample[i], neg);
        if (!definite(r)) {
            ++rep.skipped_undetermined;
            continue;
        }
        ++rep.incomp_checked;
        if (r.relation != Relation::Incomparable) {
            ++rep.incomp_failed;
            record(rep, "incomparability of x and -x", i, i, i);
        }
    }

    return rep;
}

}  // namespace profit
