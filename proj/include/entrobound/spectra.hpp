#pragma once

// Quantum input pathway: Hermitian eigenvalues via cyclic Jacobi rotations,
// density-matrix entropies, and Schmidt coefficients of bipartite pure
// states. Eigenvectors are never needed, only spectra.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrobound/errors.hpp"
#include "entrobound/measures.hpp"
#include "entrobound/simplex.hpp"

namespace entrobound {

using cplx = std::complex<double>;

/// Square complex matrix, row-major. Hermiticity is checked where it is
/// required, not at construction, so the type can also carry Ginibre draws.
class HermMatrix {
public:
    HermMatrix(int d, std::vector<cplx> entries) : d_(d), a_(std::move(entries)) {
        if (d_ < 1 || a_.size() != static_cast<std::size_t>(d_) * d_)
            throw std::invalid_argument("matrix entries do not match dimension");
    }

    explicit HermMatrix(int d)
        : d_(d), a_(static_cast<std::size_t>(d) * d, cplx{0.0, 0.0}) {}

    int dim() const { return d_; }
    cplx& at(int i, int j) { return a_[static_cast<std::size_t>(i) * d_ + j]; }
    const cplx& at(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * d_ + j];
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    /// max_ij |A_ij - conj(A_ji)|
    double hermiticity_defect() const {
        double m = 0.0;
        for (int i = 0; i < d_; ++i)
            for (int j = i; j < d_; ++j)
                m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
        return m;
    }

    double trace_real() const {
        double t = 0.0;
        for (int i = 0; i < d_; ++i) t += at(i, i).real();
        return t;
    }

private:
    int d_;
    std::vector<cplx> a_;
};

namespace detail {

inline double offdiag_frobenius(const HermMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

inline double frobenius(const HermMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing A[p][q]. A is Hermitian; the
// rotation is U with U[p][p] = c, U[p][q] = -s e^{i phi},
// U[q][p] = s e^{-i phi}, U[q][q] = c, phi = arg(A[p][q]).
inline void jacobi_rotate(HermMatrix& a, int p, int q) {
    const cplx apq = a.at(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cplx phase = apq / mag;  // e^{i phi}
    const double app = a.at(p, p).real();
    const double aqq = a.at(q, q).real();

    double t;  // tan(theta)
    if (app == aqq) {
        t = 1.0;
    } else {
        const double mu = (app - aqq) / (2.0 * mag);
        t = (mu >= 0.0 ? 1.0 : -1.0) / (std::abs(mu) + std::sqrt(mu * mu + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    // Column update (A U), then rows by Hermitian symmetry.
    const int d = a.dim();
    for (int i = 0; i < d; ++i) {
        if (i == p || i == q) continue;
        const cplx aip = a.at(i, p);
        const cplx aiq = a.at(i, q);
        a.at(i, p) = c * aip + s * std::conj(phase) * aiq;
        a.at(i, q) = -s * phase * aip + c * aiq;
        a.at(p, i) = std::conj(a.at(i, p));
        a.at(q, i) = std::conj(a.at(i, q));
    }
    const double npp = c * c * app + 2.0 * c * s * mag + s * s * aqq;
    const double nqq = s * s * app - 2.0 * c * s * mag + c * c * aqq;
    a.at(p, p) = cplx{npp, 0.0};
    a.at(q, q) = cplx{nqq, 0.0};
    a.at(p, q) = cplx{0.0, 0.0};
    a.at(q, p) = cplx{0.0, 0.0};
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, sorted descending. Cyclic Jacobi on
/// a private copy; converged when the off-diagonal Frobenius norm drops
/// below 1e-12 * ||A||_F.
inline std::vector<double> eigenvalues(const HermMatrix& a) {
    const double scale = a.max_abs();
    if (a.hermiticity_defect() > 1e-10 * std::max(scale, 1e-300))
        throw NotHermitian("matrix is not Hermitian: max defect " +
                           std::to_string(a.hermiticity_defect()));
    HermMatrix w = a;
    const int d = w.dim();
    if (d == 1) return {w.at(0, 0).real()};
    const double norm = detail::frobenius(w);
    const double target = 1e-12 * norm;
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (detail::offdiag_frobenius(w) > target) {
        if (++sweep > kMaxSweeps)
            throw NoConvergence("Jacobi eigensolver did not converge in " +
                                std::to_string(kMaxSweeps) + " sweeps");
        for (int p = 0; p < d - 1; ++p)
            for (int q = p + 1; q < d; ++q) detail::jacobi_rotate(w, p, q);
    }
    std::vector<double> ev(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) ev[static_cast<std::size_t>(i)] = w.at(i, i).real();
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

/// S_f(rho) = sum_i f(lambda_i) over the eigenvalues of a density matrix.
inline double density_entropy(const EntropyMeasure& m, const HermMatrix& rho) {
    if (std::abs(rho.trace_real() - 1.0) > 1e-10)
        throw NotDensityMatrix("trace is " + std::to_string(rho.trace_real()) +
                               ", expected 1");
    auto ev = eigenvalues(rho);
    for (double x : ev)
        if (x < -1e-10)
            throw NotDensityMatrix("negative eigenvalue " + std::to_string(x));
    return eval_sum(m, make_probvec(std::move(ev)));
}

/// Bipartite pure state |psi> = sum_jk C_jk |j>|k>, stored as the dA x dB
/// amplitude matrix C.
class PureBipartite {
public:
    PureBipartite(int da, int db, std::vector<cplx> c)
        : da_(da), db_(db), c_(std::move(c)) {
        if (da_ < 1 || db_ < 1 ||
            c_.size() != static_cast<std::size_t>(da_) * db_)
            throw std::invalid_argument("amplitudes do not match dimensions");
    }

    int da() const { return da_; }
    int db() const { return db_; }
    const cplx& at(int j, int k) const {
        return c_[static_cast<std::size_t>(j) * db_ + k];
    }

    double norm2() const {
        double s = 0.0;
        for (const cplx& z : c_) s += std::norm(z);
        return s;
    }

private:
    int da_, db_;
    std::vector<cplx> c_;
};

/// Schmidt coefficients: eigenvalues of the reduced density matrix C C^dag,
/// truncated to min(dA, dB) entries.
inline ProbVec schmidt_probs(const PureBipartite& psi) {
    if (std::abs(psi.norm2() - 1.0) > 1e-10)
        throw NotNormalized("state norm^2 is " + std::to_string(psi.norm2()) +
                            ", expected 1");
    // Reduce over the larger subsystem so the eigenproblem is as small as
    // possible: C C^dag is dA x dA, C^dag C is dB x dB.
    const bool use_rows = psi.da() <= psi.db();
    const int d = use_rows ? psi.da() : psi.db();
    HermMatrix rho(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            cplx s{0.0, 0.0};
            const int inner = use_rows ? psi.db() : psi.da();
            for (int k = 0; k < inner; ++k)
                s += use_rows ? psi.at(i, k) * std::conj(psi.at(j, k))
                              : psi.at(k, i) * std::conj(psi.at(k, j));
            rho.at(i, j) = s;
        }
    auto ev = eigenvalues(rho);
    if (ev.size() < 2) ev.push_back(0.0);  // dA or dB of 1: pad to a ProbVec
    return make_probvec(std::move(ev));
}

}  // namespace entrobound
