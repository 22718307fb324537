#pragma once

// Seeded random generation of probability vectors and density-matrix
// spectra, plus the Monte Carlo bound-violation scan behind the
// counterexample experiment. Streams are deterministic for a fixed seed;
// the scan generates draws sequentially and fans the per-sample work out
// to worker threads, so results do not depend on the thread count.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "entrobound/errors.hpp"
#include "entrobound/extremal.hpp"
#include "entrobound/measures.hpp"
#include "entrobound/simplex.hpp"
#include "entrobound/spectra.hpp"

namespace entrobound {

inline constexpr const char* kGeneratorName = "mt19937_64";

enum class Ensemble { SimplexUniform, HilbertSchmidt };

struct SampleConfig {
    int d = 2;
    long long n = 1;
    std::uint64_t seed = 0;
    Ensemble ensemble = Ensemble::SimplexUniform;
};

/// i.i.d. uniform draws from the (d-1)-simplex, via normalized
/// exponentials (flat Dirichlet).
class SimplexSampler {
public:
    SimplexSampler(int d, std::uint64_t seed) : d_(d), rng_(seed) {
        if (d < 2) throw TooShort("sampler dimension must be >= 2");
    }

    ProbVec next() {
        std::vector<double> v(static_cast<std::size_t>(d_));
        double sum = 0.0;
        for (double& x : v) {
            // 1 - U in (0, 1]: keeps the log finite.
            x = -std::log(1.0 - unit_(rng_));
            sum += x;
        }
        for (double& x : v) x /= sum;
        return make_probvec(std::move(v));
    }

private:
    int d_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

/// d x d complex Ginibre draws (independent standard complex Gaussians).
class GinibreSampler {
public:
    GinibreSampler(int d, std::uint64_t seed) : d_(d), rng_(seed) {
        if (d < 2) throw TooShort("sampler dimension must be >= 2");
    }

    std::vector<cplx> next_raw() {
        std::vector<cplx> g(static_cast<std::size_t>(d_) * d_);
        for (cplx& z : g) z = cplx{gauss_(rng_), gauss_(rng_)};
        return g;
    }

    int dim() const { return d_; }

private:
    int d_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

/// Spectrum of G G^dag / Tr(G G^dag): the Hilbert-Schmidt ensemble.
/// Eigensolver round-off slightly below zero is clamped and the spectrum
/// renormalized before validation.
inline ProbVec density_eigs_from_ginibre(int d, const std::vector<cplx>& g) {
    HermMatrix rho(d);
    double tr = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            cplx s{0.0, 0.0};
            for (int k = 0; k < d; ++k)
                s += g[static_cast<std::size_t>(i) * d + k] *
                     std::conj(g[static_cast<std::size_t>(j) * d + k]);
            rho.at(i, j) = s;
            rho.at(j, i) = std::conj(s);
            if (i == j) tr += s.real();
        }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rho.at(i, j) /= tr;
    auto ev = eigenvalues(rho);
    double sum = 0.0;
    for (double& x : ev) {
        if (x < 0.0 && x > -1e-10) x = 0.0;
        sum += x;
    }
    for (double& x : ev) x /= sum;
    return make_probvec(std::move(ev));
}

class DensitySampler {
public:
    DensitySampler(int d, std::uint64_t seed) : ginibre_(d, seed) {}
    ProbVec next() {
        return density_eigs_from_ginibre(ginibre_.dim(), ginibre_.next_raw());
    }

private:
    GinibreSampler ginibre_;
};

inline std::vector<ProbVec> sample_simplex(const SampleConfig& cfg) {
    SimplexSampler s(cfg.d, cfg.seed);
    std::vector<ProbVec> out;
    out.reserve(static_cast<std::size_t>(cfg.n));
    for (long long i = 0; i < cfg.n; ++i) out.push_back(s.next());
    return out;
}

inline std::vector<ProbVec> sample_density(const SampleConfig& cfg) {
    DensitySampler s(cfg.d, cfg.seed);
    std::vector<ProbVec> out;
    out.reserve(static_cast<std::size_t>(cfg.n));
    for (long long i = 0; i < cfg.n; ++i) out.push_back(s.next());
    return out;
}

/// Worker-thread cap: ENTROPY_BOUNDS_THREADS, 0 or unset meaning auto.
inline int thread_budget() {
    const char* s = std::getenv("ENTROPY_BOUNDS_THREADS");
    int n = s ? std::atoi(s) : 0;
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}

namespace detail {

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n < 256) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = n * static_cast<std::size_t>(t) / threads;
        const std::size_t hi = n * (static_cast<std::size_t>(t) + 1) / threads;
        pool.emplace_back([&, t, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

enum class ViolationSide : std::int8_t { Below = -1, None = 0, Above = 1 };

struct ScatterRow {
    double hg, hf;  // display coordinates
    ViolationSide violation = ViolationSide::None;
};

struct ViolationReport {
    long long n_total = 0;
    long long n_below = 0;
    long long n_above = 0;
    double max_excursion = 0.0;
    std::vector<double> worst_sample;
};

inline constexpr double kViolationThreshold = 1e-9;

/// Draws cfg.n samples, computes (H_g, H_f) for each, and checks it
/// against the two family curves at the sample's own H_g via exact
/// inversion (no curve interpolation). Excursions beyond 1e-9 count as
/// violations; the worst offender is kept. When `curve` is given it is
/// only validated for coverage of the attainable H_g range. `scatter`,
/// when non-null, receives one row per sample in draw order.
inline ViolationReport scan_violations(const EntropyMeasure& f,
                                       const EntropyMeasure& g,
                                       const SampleConfig& cfg,
                                       std::vector<ScatterRow>* scatter = nullptr,
                                       const BoundCurve* curve = nullptr) {
    const int d = cfg.d;
    if (curve) {
        const auto range = detail::attainable_range(g, d);
        const double span = std::max(1.0, range.hi() - range.lo());
        double lo = g.display(range.at_uniform), hi = g.display(range.at_pure);
        if (lo > hi) std::swap(lo, hi);
        double clo = curve->rows.front().hg, chi = curve->rows.back().hg;
        if (clo > lo + 1e-9 * span || chi < hi - 1e-9 * span)
            throw TargetOutOfRange(
                "bound curve does not cover the attainable H_g range");
    }

    const int threads = thread_budget();
    const bool flip = f.display_reverses_order();
    ViolationReport report;
    if (scatter) scatter->reserve(static_cast<std::size_t>(cfg.n));

    constexpr std::size_t kChunk = 8192;
    SimplexSampler simplex(d, cfg.seed);
    GinibreSampler ginibre(d, cfg.seed);

    std::vector<ProbVec> probs;          // simplex path
    std::vector<std::vector<cplx>> raws;  // Hilbert-Schmidt path
    struct Result {
        double hg_disp, hf_disp;
        double excursion;  // signed: negative below, positive above, 0 inside
        ProbVec* sample = nullptr;
    };
    std::vector<Result> results;

    long long remaining = cfg.n;
    while (remaining > 0) {
        const std::size_t m =
            static_cast<std::size_t>(std::min<long long>(remaining, kChunk));
        probs.clear();
        raws.clear();
        if (cfg.ensemble == Ensemble::SimplexUniform) {
            for (std::size_t i = 0; i < m; ++i) probs.push_back(simplex.next());
        } else {
            for (std::size_t i = 0; i < m; ++i)
                raws.push_back(ginibre.next_raw());
            probs.assign(m, uniform(d));  // overwritten by workers
        }
        results.assign(m, Result{});
        detail::parallel_for(m, threads, [&](std::size_t i) {
            if (cfg.ensemble == Ensemble::HilbertSchmidt)
                probs[i] = density_eigs_from_ginibre(d, raws[i]);
            const ProbVec& p = probs[i];
            const double hg = eval_sum(g, p);
            const double hf = eval_sum(f, p);
            const FamilyPoint pt = family_point(f, g, d, hg);
            const double lo = std::min(pt.hf_maxer_raw, pt.hf_miner_raw);
            const double hi = std::max(pt.hf_maxer_raw, pt.hf_miner_raw);
            Result& r = results[i];
            r.hg_disp = g.display(hg);
            r.hf_disp = f.display(hf);
            r.excursion = hf < lo ? hf - lo : (hf > hi ? hf - hi : 0.0);
            r.sample = &probs[i];
        });
        for (std::size_t i = 0; i < m; ++i) {
            const Result& r = results[i];
            ++report.n_total;
            ViolationSide side = ViolationSide::None;
            if (r.excursion < -kViolationThreshold)
                side = flip ? ViolationSide::Above : ViolationSide::Below;
            else if (r.excursion > kViolationThreshold)
                side = flip ? ViolationSide::Below : ViolationSide::Above;
            if (side == ViolationSide::Below) ++report.n_below;
            if (side == ViolationSide::Above) ++report.n_above;
            const double mag = std::abs(r.excursion);
            if (mag > report.max_excursion) {
                report.max_excursion = mag;
                report.worst_sample = r.sample->values();
            }
            if (scatter) scatter->push_back({r.hg_disp, r.hf_disp, side});
        }
        remaining -= static_cast<long long>(m);
    }
    return report;
}

inline const char* to_string(ViolationSide s) {
    switch (s) {
        case ViolationSide::Below: return "below";
        case ViolationSide::Above: return "above";
        default: return "none";
    }
}

/// Scatter CSV, one row per sample.
inline void write_scatter_csv(std::ostream& os,
                              const std::vector<ScatterRow>& rows,
                              const std::string& comment = {}) {
    if (!comment.empty()) os << "# " << comment << "\n";
    os << "Hg,Hf,violation\n";
    char buf[128];
    for (const ScatterRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s\n", r.hg, r.hf,
                      to_string(r.violation));
        os << buf;
    }
}

}  // namespace entrobound
