#pragma once

// Probability vectors: nonnegative, sum to one, dimension >= 2.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "entrobound/errors.hpp"

namespace entrobound {

/// Validated probability vector. Entries in [-1e-12, 0) are clamped to 0
/// at construction; the sum must match 1 within 1e-10 * d.
class ProbVec {
public:
    static constexpr double kClampBand = 1e-12;
    static constexpr double kSumTolPerDim = 1e-10;

    explicit ProbVec(std::vector<double> values) : v_(std::move(values)) {
        if (v_.size() < 2)
            throw TooShort("probability vector needs at least 2 entries, got " +
                           std::to_string(v_.size()));
        double sum = 0.0;
        for (double& x : v_) {
            if (x < 0.0) {
                if (x < -kClampBand)
                    throw NegativeEntry("entry " + std::to_string(x) +
                                        " below clamp band -1e-12");
                x = 0.0;
            }
            sum += x;
        }
        const double tol = kSumTolPerDim * static_cast<double>(v_.size());
        if (std::abs(sum - 1.0) > tol)
            throw SumNotOne("entries sum to " + std::to_string(sum) +
                            ", outside 1 +/- " + std::to_string(tol));
    }

    ProbVec(std::initializer_list<double> values)
        : ProbVec(std::vector<double>(values)) {}

    std::size_t size() const { return v_.size(); }
    int dim() const { return static_cast<int>(v_.size()); }
    double operator[](std::size_t i) const { return v_[i]; }
    const std::vector<double>& values() const { return v_; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

private:
    std::vector<double> v_;
};

inline ProbVec make_probvec(std::vector<double> values) {
    return ProbVec(std::move(values));
}

/// Maximally mixed distribution (1/d, ..., 1/d).
inline ProbVec uniform(int d) {
    if (d < 2) throw TooShort("dimension must be >= 2");
    return ProbVec(std::vector<double>(static_cast<std::size_t>(d),
                                       1.0 / static_cast<double>(d)));
}

/// Pure distribution (1, 0, ..., 0).
inline ProbVec pure(int d) {
    if (d < 2) throw TooShort("dimension must be >= 2");
    std::vector<double> v(static_cast<std::size_t>(d), 0.0);
    v[0] = 1.0;
    return ProbVec(std::move(v));
}

}  // namespace entrobound
