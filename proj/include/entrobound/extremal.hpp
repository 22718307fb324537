#pragma once

// Extremal one-parameter families of probability distributions, inversion
// of H_g over each family, the convexity classifier for f' as a function
// of g', and the resulting entropy-vs-entropy bounds.
//
// The two families are
//   maxer: (l0, l1, ..., l1)      with l1 = (1 - l0)/(d - 1) <= l0
//   miner: (l0 x k, l1, 0, ...)   with k = floor(1/l0), l1 = 1 - k*l0 < l0
// both parametrised by l0 in [1/d, 1]. H_g is one-to-one in l0 on each
// family, so a target H_g pins down a unique member.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "entrobound/errors.hpp"
#include "entrobound/measures.hpp"
#include "entrobound/simplex.hpp"

namespace entrobound {

enum class Form { Maxer, Miner };

inline const char* to_string(Form f) {
    return f == Form::Maxer ? "maxer" : "miner";
}

struct ExtremalFamily {
    Form form;
    int d;
    double lambda0;
};

/// The probability vector a family member stands for. The last block entry
/// is computed by subtraction so the vector sums to 1 exactly.
inline ProbVec realize(const ExtremalFamily& fam) {
    const int d = fam.d;
    const double l0 = fam.lambda0;
    if (d < 2) throw TooShort("family dimension must be >= 2");
    if (l0 < 1.0 / d - 1e-12 || l0 > 1.0 + 1e-12)
        throw Lambda0OutOfRange("lambda0 = " + std::to_string(l0) +
                                " outside [1/d, 1] for d = " +
                                std::to_string(d));
    std::vector<double> v(static_cast<std::size_t>(d), 0.0);
    if (fam.form == Form::Maxer) {
        const double l1 = (1.0 - l0) / (d - 1);
        v[0] = l0;
        for (int i = 1; i < d; ++i) v[static_cast<std::size_t>(i)] = l1;
    } else {
        int k = static_cast<int>(std::floor(1.0 / l0 + 1e-12));
        double l1 = 1.0 - k * l0;
        if (l1 >= l0 - 1e-12) {  // remainder folds into the equal block
            ++k;
            l1 = 1.0 - k * l0;
        }
        if (l1 < 0.0) l1 = 0.0;
        if (k >= d) {  // l0 within rounding of 1/d: the uniform point
            k = d;
            l1 = 0.0;
        }
        const int carry = l1 > 0.0 ? 1 : 0;
        if (k + carry > d)
            throw MinerOverflow("miner family needs " +
                                std::to_string(k + carry) +
                                " slots but d = " + std::to_string(d));
        for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = l0;
        if (carry) v[static_cast<std::size_t>(k)] = l1;
    }
    return make_probvec(std::move(v));
}

/// H_g of a family member, in closed form: g(l0) + (d-1) g(l1) for maxer,
/// k g(l0) + g(l1) for miner. Agrees with eval_sum over realize(fam).
inline double family_Hg(const EntropyMeasure& g, const ExtremalFamily& fam) {
    const int d = fam.d;
    const double l0 = fam.lambda0;
    if (d < 2) throw TooShort("family dimension must be >= 2");
    if (l0 < 1.0 / d - 1e-12 || l0 > 1.0 + 1e-12)
        throw Lambda0OutOfRange("lambda0 = " + std::to_string(l0) +
                                " outside [1/d, 1] for d = " +
                                std::to_string(d));
    if (fam.form == Form::Maxer) {
        const double l1 = (1.0 - l0) / (d - 1);
        return g.f(l0) + (d - 1) * (l1 == 0.0 ? 0.0 : g.f(l1));
    }
    int k = static_cast<int>(std::floor(1.0 / l0 + 1e-12));
    double l1 = 1.0 - k * l0;
    if (l1 >= l0 - 1e-12) {
        ++k;
        l1 = 1.0 - k * l0;
    }
    if (l1 < 0.0) l1 = 0.0;
    if (k >= d) {
        k = d;
        l1 = 0.0;
    }
    if (k + (l1 > 0.0 ? 1 : 0) > d)
        throw MinerOverflow("miner family needs more than d = " +
                            std::to_string(d) + " slots");
    return k * g.f(l0) + (l1 == 0.0 ? 0.0 : g.f(l1));
}

namespace detail {

struct AttainableRange {
    double at_uniform;  // d * g(1/d)
    double at_pure;     // g(1)
    double lo() const { return std::min(at_uniform, at_pure); }
    double hi() const { return std::max(at_uniform, at_pure); }
};

inline AttainableRange attainable_range(const EntropyMeasure& g, int d) {
    return {d * g.f(1.0 / d), g.f(1.0)};
}

// Bisection for family_Hg(l0) = target on [lo, hi], where H is monotone.
// Runs to the floating-point resolution of the bracket so l0 itself is
// recovered, not just the function value.
inline double bisect_family(const EntropyMeasure& g, Form form, int d,
                            double target, double lo, double hi) {
    const double tol = 1e-12 * std::max(1.0, std::abs(target));
    auto H = [&](double l0) { return family_Hg(g, {form, d, l0}); };
    double hlo = H(lo), hhi = H(hi);
    const bool increasing = hhi > hlo;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        // no early return on hm == target: on the flat plateau near the
        // uniform endpoint (always the lo side) that would stop ~1e-8 off
        // the edge, so equality shrinks hi and we converge to the left
        // edge of the plateau
        const double hm = H(mid);
        if (hm != target && (hm < target) == increasing) {
            lo = mid;
            hlo = hm;
        } else {
            hi = mid;
            hhi = hm;
        }
    }
    const double best =
        std::abs(hlo - target) <= std::abs(hhi - target) ? lo : hi;
    // a machine-width bracket that still straddles the target is as good
    // as doubles allow even when the residual stays large (H can jump by
    // ~ulp/sqrt(l1) across one representable l0 where g' diverges)
    if (target >= std::min(hlo, hhi) && target <= std::max(hlo, hhi))
        return best;
    if (std::abs(H(best) - target) > tol)
        throw NoConvergence("family inversion stalled at lambda0 = " +
                            std::to_string(best) + ", residual " +
                            std::to_string(H(best) - target));
    return best;
}

}  // namespace detail

/// Finds the lambda0 with family_Hg(lambda0) = target. Maxer uses a single
/// bracket [1/d, 1]; miner bisects inside the piecewise-smooth segment
/// (1/(k+1), 1/k] whose value range contains the target, scanning k from
/// d-1 down to 1 (H_g is globally monotone and continuous across segment
/// boundaries, and boundary ties resolve to the lambda1 = 0 representation).
inline double invert_Hg(const EntropyMeasure& g, Form form, int d,
                        double target) {
    const auto range = detail::attainable_range(g, d);
    const double span = std::max(1.0, range.hi() - range.lo());
    const double band = 1e-9 * span;
    if (target < range.lo() - band || target > range.hi() + band) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "target H_g = %.17g outside attainable [%.17g, %.17g] "
                      "for d = %d",
                      target, range.lo(), range.hi(), d);
        throw TargetOutOfRange(buf);
    }
    const double t = std::clamp(target, range.lo(), range.hi());

    if (form == Form::Maxer)
        return detail::bisect_family(g, form, d, t, 1.0 / d, 1.0);

    auto H = [&](double l0) { return family_Hg(g, {form, d, l0}); };
    for (int k = d - 1; k >= 1; --k) {
        const double lo = std::max(1.0 / (k + 1), 1.0 / d);
        const double hi = k == 1 ? 1.0 : 1.0 / k;
        if (hi <= lo) continue;
        const double ha = H(lo), hb = H(hi);
        const double slack = 1e-12 * span;
        if (t >= std::min(ha, hb) - slack && t <= std::max(ha, hb) + slack)
            return detail::bisect_family(g, form, d, t, lo, hi);
    }
    // Clamped target equals an attainable endpoint but no segment matched:
    // numerically only possible at the exact uniform point.
    return 1.0 / d;
}

enum class Verdict { StrictlyConvex, StrictlyConcave, Indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::StrictlyConvex: return "StrictlyConvex";
        case Verdict::StrictlyConcave: return "StrictlyConcave";
        default: return "Indeterminate";
    }
}

struct ConditionSample {
    double lambda;
    double gprime;
    double fprime;
};

struct ConditionReport {
    Verdict verdict = Verdict::Indeterminate;
    std::vector<ConditionSample> grid;
    // For Indeterminate: three lambda values across which the monotonicity
    // of f''/g'' (as a function of g') reverses.
    std::optional<std::array<double, 3>> witness;
};

/// Classifies f'(g') as strictly convex, strictly concave or indeterminate
/// by checking the monotonicity of h = f''/g'' against g' on a uniform
/// lambda grid over [1e-6, 1 - 1e-6]. h increasing with g' means convex.
inline ConditionReport classify_condition(const EntropyMeasure& f,
                                          const EntropyMeasure& g,
                                          int gridsize = 4096) {
    if (gridsize < 64)
        throw ParamOutOfRange("classifier grid needs at least 64 points");
    constexpr double kEps = 1e-6;
    ConditionReport report;
    report.grid.reserve(static_cast<std::size_t>(gridsize));
    std::vector<double> h(static_cast<std::size_t>(gridsize));
    std::vector<double> lam(static_cast<std::size_t>(gridsize));
    for (int i = 0; i < gridsize; ++i) {
        const double x =
            kEps + (1.0 - 2.0 * kEps) * i / static_cast<double>(gridsize - 1);
        const double g2 = g.d2f(x);
        const double want = g.sense() == Sense::Convex ? 1.0 : -1.0;
        if (std::abs(g2) < 1e-14 || g2 * want < 0.0)
            throw SecondDerivativeVanishes(
                "g'' of '" + g.name() + "' vanishes at lambda = " +
                std::to_string(x) + "; not strictly concave/convex");
        lam[static_cast<std::size_t>(i)] = x;
        h[static_cast<std::size_t>(i)] = f.d2f(x) / g2;
        report.grid.push_back({x, g.df(x), f.df(x)});
    }
    // g' is monotone in lambda; walking the lambda grid walks g' in a fixed
    // direction. Flip the comparison when g is concave so "increasing" is
    // always with respect to g'.
    const double dir = g.sense() == Sense::Convex ? 1.0 : -1.0;
    int n_up = 0, n_down = 0;
    int first_up = -1, first_down = -1;
    for (int i = 0; i + 1 < gridsize; ++i) {
        const double dh = dir * (h[static_cast<std::size_t>(i + 1)] -
                                 h[static_cast<std::size_t>(i)]);
        const double tol =
            1e-12 * std::max(std::abs(h[static_cast<std::size_t>(i)]),
                             std::abs(h[static_cast<std::size_t>(i + 1)]));
        if (dh > tol) {
            ++n_up;
            if (first_up < 0) first_up = i;
        } else if (dh < -tol) {
            ++n_down;
            if (first_down < 0) first_down = i;
        } else {
            ++n_up;  // a tie breaks strictness
            ++n_down;
            if (first_up < 0) first_up = i;
            if (first_down < 0) first_down = i;
        }
    }
    if (n_down == 0 && n_up > 0) {
        report.verdict = Verdict::StrictlyConvex;
    } else if (n_up == 0 && n_down > 0) {
        report.verdict = Verdict::StrictlyConcave;
    } else {
        report.verdict = Verdict::Indeterminate;
        const int i = std::max(1, std::min(first_up > first_down ? first_up
                                                                 : first_down,
                                           gridsize - 2));
        report.witness = {{lam[static_cast<std::size_t>(i - 1)],
                           lam[static_cast<std::size_t>(i)],
                           lam[static_cast<std::size_t>(i + 1)]}};
    }
    return report;
}

/// Both family curves evaluated at one raw H_g value.
struct FamilyPoint {
    double hg_raw;
    double hf_maxer_raw, hf_miner_raw;
    double lambda0_maxer, lambda0_miner;
};

inline FamilyPoint family_point(const EntropyMeasure& f,
                                const EntropyMeasure& g, int d, double hg_raw) {
    FamilyPoint pt;
    pt.hg_raw = hg_raw;
    pt.lambda0_maxer = invert_Hg(g, Form::Maxer, d, hg_raw);
    pt.lambda0_miner = invert_Hg(g, Form::Miner, d, hg_raw);
    pt.hf_maxer_raw = eval_sum(f, realize({Form::Maxer, d, pt.lambda0_maxer}));
    pt.hf_miner_raw = eval_sum(f, realize({Form::Miner, d, pt.lambda0_miner}));
    return pt;
}

struct BoundsAt {
    double hf_min, hf_max;          // display coordinates of f
    Form min_form, max_form;
    double lambda0_min, lambda0_max;
    bool bounding;  // false when emitted under an Indeterminate override
};

/// Two-sided bounds at one raw H_g, given an already computed verdict.
/// StrictlyConvex puts the maximum on the maxer family, StrictlyConcave on
/// the miner family; an order-reversing f display swaps the reported pair.
inline BoundsAt bounds_at(const EntropyMeasure& f, const EntropyMeasure& g,
                          int d, double hg_raw, Verdict verdict,
                          bool unchecked = false) {
    if (verdict == Verdict::Indeterminate && !unchecked)
        throw ConditionIndeterminate(
            "f'(g') for ('" + f.name() + "', '" + g.name() +
            "') is neither strictly convex nor strictly concave; the family "
            "curves do not bound (pass unchecked to get them anyway)");
    const FamilyPoint pt = family_point(f, g, d, hg_raw);

    Form max_form;
    if (verdict == Verdict::StrictlyConvex) {
        max_form = Form::Maxer;
    } else if (verdict == Verdict::StrictlyConcave) {
        max_form = Form::Miner;
    } else {
        max_form = pt.hf_maxer_raw >= pt.hf_miner_raw ? Form::Maxer
                                                      : Form::Miner;
    }
    const bool max_is_maxer = max_form == Form::Maxer;
    double raw_max = max_is_maxer ? pt.hf_maxer_raw : pt.hf_miner_raw;
    double raw_min = max_is_maxer ? pt.hf_miner_raw : pt.hf_maxer_raw;
    double l0_max = max_is_maxer ? pt.lambda0_maxer : pt.lambda0_miner;
    double l0_min = max_is_maxer ? pt.lambda0_miner : pt.lambda0_maxer;
    Form min_form = max_is_maxer ? Form::Miner : Form::Maxer;

    BoundsAt out;
    out.bounding = verdict != Verdict::Indeterminate;
    double disp_max = f.display(raw_max);
    double disp_min = f.display(raw_min);
    if (f.display_reverses_order()) {
        std::swap(disp_max, disp_min);
        std::swap(l0_max, l0_min);
        std::swap(max_form, min_form);
    }
    out.hf_max = disp_max;
    out.hf_min = disp_min;
    out.max_form = max_form;
    out.min_form = min_form;
    out.lambda0_max = l0_max;
    out.lambda0_min = l0_min;
    return out;
}

/// Classifies, then bounds.
inline BoundsAt bounds_at(const EntropyMeasure& f, const EntropyMeasure& g,
                          int d, double hg_raw) {
    return bounds_at(f, g, d, hg_raw, classify_condition(f, g).verdict);
}

enum class WhichMax { Maxer, Miner, Unknown };

inline const char* to_string(WhichMax w) {
    switch (w) {
        case WhichMax::Maxer: return "maxer";
        case WhichMax::Miner: return "miner";
        default: return "unknown";
    }
}

struct BoundRow {
    double hg;  // display coordinate of g
    double hf_miner, hf_maxer;  // display coordinates of f
    double lambda0_miner, lambda0_maxer;
};

struct BoundCurve {
    int d = 0;
    std::string f_spec, g_spec;
    WhichMax which_is_max = WhichMax::Unknown;
    bool bounding = false;
    std::vector<BoundRow> rows;
};

/// Sweeps lambda0 uniformly over [1/d, 1] on the maxer family (npoints
/// samples), pairing each point with the miner member at the same H_g.
/// Rows come out sorted by the displayed H_g; the endpoints are exactly
/// the uniform and pure distributions.
inline BoundCurve bound_curve(const EntropyMeasure& f, const EntropyMeasure& g,
                              int d, int npoints, bool unchecked = false) {
    if (npoints < 2) throw ParamOutOfRange("curve needs npoints >= 2");
    const Verdict verdict = classify_condition(f, g).verdict;
    if (verdict == Verdict::Indeterminate && !unchecked)
        throw ConditionIndeterminate(
            "f'(g') for ('" + f.name() + "', '" + g.name() +
            "') is neither strictly convex nor strictly concave");

    BoundCurve curve;
    curve.d = d;
    curve.f_spec = f.name();
    curve.g_spec = g.name();
    curve.bounding = verdict != Verdict::Indeterminate;
    bool max_is_maxer;
    if (verdict == Verdict::StrictlyConvex)
        max_is_maxer = true;
    else if (verdict == Verdict::StrictlyConcave)
        max_is_maxer = false;
    else
        max_is_maxer = true;  // placeholder, reported as Unknown below
    if (f.display_reverses_order()) max_is_maxer = !max_is_maxer;
    curve.which_is_max = verdict == Verdict::Indeterminate
                             ? WhichMax::Unknown
                             : (max_is_maxer ? WhichMax::Maxer
                                             : WhichMax::Miner);

    curve.rows.reserve(static_cast<std::size_t>(npoints));
    for (int j = 0; j < npoints; ++j) {
        const double l0 =
            j == npoints - 1
                ? 1.0
                : 1.0 / d + (1.0 - 1.0 / d) * j / (npoints - 1.0);
        const double hg_raw = family_Hg(g, {Form::Maxer, d, l0});
        const double l0_miner = invert_Hg(g, Form::Miner, d, hg_raw);
        BoundRow row;
        row.hg = g.display(hg_raw);
        row.lambda0_maxer = l0;
        row.lambda0_miner = l0_miner;
        row.hf_maxer = f.display(eval_sum(f, realize({Form::Maxer, d, l0})));
        row.hf_miner =
            f.display(eval_sum(f, realize({Form::Miner, d, l0_miner})));
        curve.rows.push_back(row);
    }
    std::sort(curve.rows.begin(), curve.rows.end(),
              [](const BoundRow& a, const BoundRow& b) { return a.hg < b.hg; });
    return curve;
}

/// CSV emission, 17 significant digits. `comment` (if nonempty) is written
/// first as a `#`-prefixed metadata line.
inline void write_curve_csv(std::ostream& os, const BoundCurve& curve,
                            const std::string& comment = {}) {
    if (!comment.empty()) os << "# " << comment << "\n";
    os << "Hg,Hf_miner,Hf_maxer,lambda0_miner,lambda0_maxer,which_is_max,"
          "bounding\n";
    char buf[512];
    for (const BoundRow& r : curve.rows) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%s,%s\n", r.hg,
                      r.hf_miner, r.hf_maxer, r.lambda0_miner, r.lambda0_maxer,
                      to_string(curve.which_is_max),
                      curve.bounding ? "true" : "false");
        os << buf;
    }
}

}  // namespace entrobound
