#include "profit/irr.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace profit {

namespace {

struct Crossing {
    double lambda;
    int dir;  // +1: sign goes - to +, -1: + to -
};

// Scalar bisection for a root of g in (lo, hi), sgn g(lo) = slo ≠ sgn g(hi).
double bisect_root(const kernel::Profile& p, double lo, double hi, int slo, double tol) {
    for (int i = 0; i < 200 && hi - lo > tol * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double v = kernel::profile_eval(p, mid);
        if (v == 0.0) return mid;
        if (sgn(v) == slo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Scalar bisection for a root of g' in (lo, hi); requires a sign change of
// the derivative across the bracket. Returns the critical λ, or nullopt when
// the derivative does not change sign.
std::optional<double> bisect_extremum(const kernel::Profile& p, double lo, double hi, double tol) {
    double dlo = kernel::profile_derivative(p, lo);
    const double dhi = kernel::profile_derivative(p, hi);
    if (dlo == 0.0) return lo;
    if (dhi == 0.0) return hi;
    if (sgn(dlo) == sgn(dhi)) return std::nullopt;
    for (int i = 0; i < 200 && hi - lo > tol * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double dm = kernel::profile_derivative(p, mid);
        if (dm == 0.0) return mid;
        if (sgn(dm) == sgn(dlo)) {
            lo = mid;
            dlo = dm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Detection {
    std::vector<Crossing> crossings;
    std::vector<double> isolated;     // exact tangencies inside negative runs
    std::vector<double> tangencies;   // exact tangencies inside positive runs
    bool start_in = false;            // is λ = 0 in the acceptance set?
    bool undetermined = false;
};

// Classify sign structure over sampled positions/values. Requires pos[0] == 0
// and values already scalar-refined near zero.
Detection detect(const kernel::Profile& p, const std::vector<double>& pos,
                 const std::vector<double>& val, double band, double tol) {
    Detection d;
    const std::size_t n = pos.size();

    auto next_sign = [&](std::size_t i) -> int {
        for (std::size_t j = i + 1; j < n; ++j)
            if (val[j] != 0.0) return sgn(val[j]);
        return 0;
    };
    auto prev_sign = [&](std::size_t i) -> int {
        for (std::size_t j = i; j-- > 0;)
            if (val[j] != 0.0) return sgn(val[j]);
        return 0;
    };

    // λ = 0 membership: g(0) ≥ 0 keeps 0 in the acceptance set; the exact
    // zero with a negative continuation becomes an isolated point. A nonzero
    // total inside the band sits too close to the boundary to trust.
    if (val[0] != 0.0 && std::abs(val[0]) <= band) d.undetermined = true;
    if (val[0] > 0.0) {
        d.start_in = true;
    } else if (val[0] == 0.0) {
        if (next_sign(0) < 0) {
            d.isolated.push_back(0.0);
            d.start_in = false;
        } else {
            d.start_in = true;
        }
    }

    // Exact zeros at interior sample points.
    for (std::size_t i = 1; i < n; ++i) {
        if (val[i] != 0.0) continue;
        const int ps = prev_sign(i);
        const int ns = next_sign(i);
        if (ps < 0 && ns < 0)
            d.isolated.push_back(pos[i]);
        else if (ps > 0 && ns > 0)
            d.tangencies.push_back(pos[i]);
        else if (ps != 0 && ns != 0)
            d.crossings.push_back({pos[i], ns});
    }

    // Plain sign crossings between consecutive samples. A flip whose bracket
    // already sits inside the noise band is recorded but cannot be certified:
    // it may be rounding debris from a tangency.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (val[i] == 0.0 || val[i + 1] == 0.0) continue;
        const int a = sgn(val[i]);
        const int b = sgn(val[i + 1]);
        if (a * b < 0) {
            d.crossings.push_back({bisect_root(p, pos[i], pos[i + 1], a, tol), b});
            if (std::min(std::abs(val[i]), std::abs(val[i + 1])) <= 8.0 * band)
                d.undetermined = true;
        }
    }

    // Near-zero dips with equal-signed flanks: candidate double roots or
    // tangencies. Refine the interior extremum and classify by exact sign.
    std::size_t i = 1;
    while (i + 1 < n) {
        if (std::abs(val[i]) > 8.0 * band || val[i] == 0.0) {
            ++i;
            continue;
        }
        std::size_t j = i;
        bool has_zero = false;
        while (j + 1 < n && std::abs(val[j]) <= 8.0 * band) {
            if (val[j] == 0.0) has_zero = true;
            ++j;
        }
        // run is [i, j); flanks are i-1 and j (j < n by loop bound)
        const std::size_t lf = i - 1;
        const std::size_t rf = j;
        const int sl = val[lf] == 0.0 ? 0 : sgn(val[lf]);
        const int sr = val[rf] == 0.0 ? 0 : sgn(val[rf]);
        bool interior_flip = false;
        for (std::size_t k = i; k < rf; ++k)
            if (val[k] != 0.0 && sgn(val[k]) != sl) interior_flip = true;
        if (has_zero || interior_flip || sl == 0 || sr == 0 || sl != sr) {
            i = j + 1;
            continue;  // already covered by zero/crossing handling
        }
        const auto ext = bisect_extremum(p, pos[lf], pos[rf], tol);
        if (ext) {
            const double ge = kernel::profile_eval(p, *ext);
            if (ge == 0.0) {
                if (sl < 0)
                    d.isolated.push_back(*ext);
                else
                    d.tangencies.push_back(*ext);
            } else if (sgn(ge) != sl) {
                d.crossings.push_back({bisect_root(p, pos[lf], *ext, sl, tol), -sl});
                d.crossings.push_back({bisect_root(p, *ext, pos[rf], -sl, tol), sl});
                if (std::abs(ge) <= band) d.undetermined = true;
            } else if (std::abs(ge) <= band) {
                d.undetermined = true;  // grazes zero closer than the band
            }
        }
        // No derivative sign change: g is monotone across the bracket, so the
        // endpoint signs already decide it — small magnitudes are fine there.
        i = j + 1;
    }

    std::sort(d.crossings.begin(), d.crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.lambda < b.lambda; });
    return d;
}

std::vector<double> build_grid(double lam_max, std::size_t n_terms) {
    const std::size_t n = 64 * std::max<std::size_t>(n_terms, 4);
    const std::size_t half = n / 2;
    std::vector<double> grid;
    grid.reserve(n + 2);
    grid.push_back(0.0);
    for (std::size_t i = 1; i <= half; ++i)
        grid.push_back(lam_max * static_cast<double>(i) / static_cast<double>(half));
    const double geo_lo = lam_max * 1e-9;
    for (std::size_t i = 0; i + 1 < half; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(half - 1);
        grid.push_back(geo_lo * std::pow(1e9, f));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

}  // namespace

bool AcceptanceSet::is_whole_halfline() const {
    return set.intervals().size() == 1 && set.intervals()[0].lo == 0.0 &&
           set.intervals()[0].hi == inf;
}

AcceptanceSet acceptance_set(const DFamily& family, const CashFlow& x, IrrOptions opts) {
    if (!(opts.tol > 0.0)) throw input_error("acceptance_set: tolerance must be positive");
    AcceptanceSet out;
    const kernel::Profile p = family.profile(x);
    const std::size_t m = p.s.size();
    if (m == 0) {  // the zero project is accepted by every functional
        out.set = IntervalSet::whole(0.0, inf);
        out.lambda_max = 1.0;
        return out;
    }

    int changes = 0;
    for (std::size_t k = 1; k < m; ++k)
        if (sgn(p.a[k]) != sgn(p.a[k - 1])) ++changes;
    out.sign_changes_bound = changes;

    double tail_mag = 0.0;
    for (std::size_t k = 1; k < m; ++k) tail_mag += std::abs(p.a[k]);
    const double scale = std::abs(p.a[0]) + tail_mag;
    const double band = opts.tol * std::max(1.0, scale);
    const int tail_sign = sgn(p.a[0]);

    if (changes == 0) {  // single-signed coefficients: g never changes sign
        out.lambda_max = 1.0;
        if (tail_sign > 0) out.set = IntervalSet::whole(0.0, inf);
        return out;
    }

    // Rigorous tail horizon: for λ with tail_mag·e^{-λ·(s₁-s₀)} < |a₀|, the
    // first term dominates and sgn g(λ) = sgn a₀; factor 2 adds margin.
    const double gap = p.s[1] - p.s[0];
    const double lam_tail = std::max(0.0, std::log(2.0 * tail_mag / std::abs(p.a[0])) / gap);
    double lam_max = std::max({opts.lambda_max, 2.0 * lam_tail, 1.0});

    Detection det;
    for (int attempt = 0;; ++attempt) {
        std::vector<double> grid = build_grid(lam_max, m);
        std::vector<double> val(grid.size());
        kernel::profile_scan(p, grid.data(), val.data(), grid.size(), opts.backend);
        // Re-derive every decision-relevant value with the scalar reference.
        for (std::size_t i = 0; i < val.size(); ++i)
            if (std::abs(val[i]) <= 16.0 * band) val[i] = kernel::profile_eval(p, grid[i]);

        det = detect(p, grid, val, band, opts.tol);

        // Rolle refinement: if fewer zeros were found than the Descartes
        // bound allows, augment the samples with the critical points of g
        // (sign changes of g' between samples) and re-detect. Between
        // consecutive critical points g is monotone, so this pass cannot
        // miss a crossing whose critical points were located.
        const int multiplicity = static_cast<int>(det.crossings.size()) +
                                 2 * static_cast<int>(det.isolated.size() + det.tangencies.size());
        if (multiplicity < changes) {
            std::vector<double> dval(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i)
                dval[i] = kernel::profile_derivative(p, grid[i]);
            std::vector<double> aug = grid;
            for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
                if (dval[i] == 0.0 || dval[i + 1] == 0.0) continue;
                if (sgn(dval[i]) * sgn(dval[i + 1]) < 0) {
                    if (auto c = bisect_extremum(p, grid[i], grid[i + 1], opts.tol))
                        aug.push_back(*c);
                }
            }
            std::sort(aug.begin(), aug.end());
            aug.erase(std::unique(aug.begin(), aug.end()), aug.end());
            std::vector<double> aval(aug.size());
            for (std::size_t i = 0; i < aug.size(); ++i)
                aval[i] = kernel::profile_eval(p, aug[i]);
            det = detect(p, aug, aval, band, opts.tol);
        }

        // The walk below must end in the analytically certified tail sign;
        // otherwise a crossing slipped past the horizon — extend and rescan.
        bool in = det.start_in;
        for (const auto& c : det.crossings) in = c.dir > 0;
        if ((in && tail_sign > 0) || (!in && tail_sign < 0) || attempt >= 3) {
            if (!((in && tail_sign > 0) || (!in && tail_sign < 0))) det.undetermined = true;
            break;
        }
        lam_max *= 4.0;
    }

    out.lambda_max = lam_max;
    out.crossings_found = static_cast<int>(det.crossings.size());
    out.undetermined = det.undetermined;
    out.interior_tangencies = det.tangencies;

    bool in = det.start_in;
    double start = 0.0;
    for (const auto& c : det.crossings) {
        if (c.dir < 0) {
            if (in) {
                out.set.add(start, c.lambda);
                in = false;
            }
        } else if (!in) {
            start = c.lambda;
            in = true;
        }
    }
    if (in) out.set.add(start, inf);
    for (double pt : det.isolated) out.set.add(pt, pt);
    return out;
}

std::optional<double> possesses_irr(const DFamily& family, const CashFlow& x, IrrOptions opts) {
    const AcceptanceSet a = acceptance_set(family, x, opts);
    if (a.undetermined || !a.interior_tangencies.empty()) return std::nullopt;
    const auto& iv = a.set.intervals();
    if (iv.size() != 1 || iv[0].lo != 0.0 || !std::isfinite(iv[0].hi)) return std::nullopt;
    return iv[0].hi;
}

double rr_closed_form(const DFamily& family, const CashFlow& x) {
    const auto& txs = x.transactions();
    if (txs.size() != 2 || !(txs[0].amount < 0.0) || !(txs[1].amount > 0.0))
        throw input_error(
            "rr_closed_form: flow must be a two-transaction investment (-a at t, +b at tau)");
    const double a = -txs[0].amount;
    const double b = txs[1].amount;
    if (b < a)
        throw input_error("rr_closed_form: requires b >= a (the operation never pays back)");
    const double ds = family.transformed_time(txs[1].time) - family.transformed_time(txs[0].time);
    return std::log(b / a) / ds;
}

bool in_natural_domain(const DFamily& family, const CashFlow& x, IrrOptions opts) {
    const AcceptanceSet a = acceptance_set(family, x, opts);
    if (a.empty()) return true;
    const auto& iv = a.set.intervals();
    return iv.size() == 1 && iv[0].lo == 0.0;
}

double natural_extension_rr(const DFamily& family, const CashFlow& x, IrrOptions opts) {
    const AcceptanceSet a = acceptance_set(family, x, opts);
    if (a.empty()) return -inf;
    const auto& iv = a.set.intervals();
    if (iv.size() != 1 || iv[0].lo != 0.0)
        throw domain_error(
            "natural_extension_rr: acceptance set is not an interval containing 0; the "
            "project lies outside the natural domain of the extended rate of return");
    return iv[0].hi;
}

Tri is_regular(const DFamily& family, const CashFlow& x, IrrOptions opts) {
    const AcceptanceSet a = acceptance_set(family, x, opts);
    for (const auto& i : a.set.intervals())
        if (i.lo == i.hi) return Tri::False;  // isolated point: not regular closed
    if (a.undetermined) return Tri::Undetermined;
    return Tri::True;
}

}  // namespace profit
