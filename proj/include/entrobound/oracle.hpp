#pragma once

// Brute-force ground truth for small dimensions: exhaustively enumerate
// the grid points of the (d-1)-simplex, keep the ones inside a thin H_g
// slab, and take the extremal H_f over them. Independent of the family
// machinery on purpose.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "entrobound/errors.hpp"
#include "entrobound/measures.hpp"
#include "entrobound/simplex.hpp"

namespace entrobound {

struct GridExtrema {
    ProbVec min_p, max_p;
    double hf_min, hf_max;
    long long n_in_slab = 0;
};

/// All grid points p = (i_0, ..., i_{d-1}) / N of the simplex with
/// |H_g(p) - hg_center| <= slab, extremized over H_f. N = round(1/step).
/// d is capped at 4; the grid grows as N^(d-1).
inline GridExtrema grid_extrema(const EntropyMeasure& f,
                                const EntropyMeasure& g, int d, double step,
                                double hg_center, double slab) {
    if (d > 4) throw DimensionTooLarge("oracle supports d <= 4, got " +
                                       std::to_string(d));
    if (d < 2) throw TooShort("oracle needs d >= 2");
    if (step < 1e-4 || step > 1e-2)
        throw ParamOutOfRange("oracle step must lie in [1e-4, 1e-2]");
    const int n = static_cast<int>(std::lround(1.0 / step));

    // f and g tabulated once per grid level: every coordinate is i/N.
    std::vector<double> fv(static_cast<std::size_t>(n) + 1);
    std::vector<double> gv(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) / n;
        fv[static_cast<std::size_t>(i)] = f.f(x);
        gv[static_cast<std::size_t>(i)] = g.f(x);
    }

    double best_min = 0.0, best_max = 0.0;
    std::vector<int> argmin, argmax;
    long long in_slab = 0;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);

    auto visit = [&](auto&& self, int pos, int left, double hg,
                     double hf) -> void {
        if (pos == d - 1) {
            idx[static_cast<std::size_t>(pos)] = left;
            const double hgt = hg + gv[static_cast<std::size_t>(left)];
            if (std::abs(hgt - hg_center) > slab) return;
            const double hft = hf + fv[static_cast<std::size_t>(left)];
            ++in_slab;
            if (in_slab == 1 || hft < best_min) {
                best_min = hft;
                argmin = idx;
            }
            if (in_slab == 1 || hft > best_max) {
                best_max = hft;
                argmax = idx;
            }
            return;
        }
        for (int i = 0; i <= left; ++i) {
            idx[static_cast<std::size_t>(pos)] = i;
            self(self, pos + 1, left - i, hg + gv[static_cast<std::size_t>(i)],
                 hf + fv[static_cast<std::size_t>(i)]);
        }
    };
    visit(visit, 0, n, 0.0, 0.0);

    if (in_slab == 0)
        throw EmptySlab("no grid point within " + std::to_string(slab) +
                        " of H_g = " + std::to_string(hg_center));
    auto to_probvec = [&](const std::vector<int>& ix) {
        std::vector<double> v(ix.size());
        for (std::size_t i = 0; i < ix.size(); ++i)
            v[i] = static_cast<double>(ix[i]) / n;
        return make_probvec(std::move(v));
    };
    return {to_probvec(argmin), to_probvec(argmax), best_min, best_max,
            in_slab};
}

/// Default slab half-width for a given step: wide enough that the slab of
/// any attainable center contains grid points (4 * step * max |g'| over
/// the interior of [0, 1]).
inline double default_slab(const EntropyMeasure& g, double step) {
    double gmax = 0.0;
    constexpr double kEps = 1e-6;
    for (int i = 0; i <= 64; ++i) {
        const double x = kEps + (1.0 - 2.0 * kEps) * i / 64.0;
        gmax = std::max(gmax, std::abs(g.df(x)));
    }
    return 4.0 * step * gmax;
}

enum class Structure { MaxerLike, MinerLike, Neither };

inline const char* to_string(Structure s) {
    switch (s) {
        case Structure::MaxerLike: return "MaxerLike";
        case Structure::MinerLike: return "MinerLike";
        default: return "Neither";
    }
}

struct StructureFlags {
    bool maxer_like = false;
    bool miner_like = false;
};

/// Both structural checks on a sorted copy of p. A vector can match both
/// forms (uniform, d = 2); structural_match prefers MaxerLike on ties.
inline StructureFlags structural_flags(const ProbVec& p, double tol) {
    std::vector<double> v = p.values();
    std::sort(v.begin(), v.end(), std::greater<double>());
    const std::size_t d = v.size();

    StructureFlags flags;
    // maxer: trailing d-1 entries equal within tol, all <= leading
    {
        bool ok = true;
        for (std::size_t i = 2; i < d; ++i)
            if (std::abs(v[i] - v[1]) > tol) ok = false;
        if (v[1] > v[0] + tol) ok = false;
        flags.maxer_like = ok;
    }
    // miner: leading block equal within tol, at most one smaller
    // remainder, anything after it at most tol
    {
        std::size_t k = 1;
        while (k < d && std::abs(v[k] - v[0]) <= tol) ++k;
        bool ok = true;
        if (k < d) {
            for (std::size_t i = k + 1; i < d; ++i)
                if (v[i] > tol) ok = false;
        }
        flags.miner_like = ok;
    }
    return flags;
}

inline Structure structural_match(const ProbVec& p, double tol) {
    const StructureFlags f = structural_flags(p, tol);
    if (f.maxer_like) return Structure::MaxerLike;
    if (f.miner_like) return Structure::MinerLike;
    return Structure::Neither;
}

}  // namespace entrobound
