#pragma once

// Trace-form entropy measures: a scalar function f on [0,1] with analytic
// first and second derivatives, plus an optional monotone display transform
// (used by the Renyi entropies, which are a log of a power sum).

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entrobound/errors.hpp"
#include "entrobound/simplex.hpp"

namespace entrobound {

inline constexpr double kLn2 = 0.6931471805599453094172321214581766;

enum class Sense { Concave, Convex };

struct DisplayTransform {
    std::function<double(double)> apply;
    bool reverses_order = false;
    bool logarithmic = false;
};

/// Immutable entropy measure. f is defined on [0,1] with f(0) = 0; the
/// derivatives are defined on the open interval only. Derivative calls
/// within 1e-9 of either endpoint throw rather than clamp.
class EntropyMeasure {
public:
    static constexpr double kEndpointGuard = 1e-9;

    EntropyMeasure(std::string name, std::function<double(double)> f,
                   std::function<double(double)> df,
                   std::function<double(double)> d2f, Sense sense,
                   std::optional<DisplayTransform> display = std::nullopt)
        : name_(std::move(name)),
          f_(std::move(f)),
          df_(std::move(df)),
          d2f_(std::move(d2f)),
          sense_(sense),
          display_(std::move(display)) {}

    const std::string& name() const { return name_; }
    Sense sense() const { return sense_; }
    bool has_display() const { return display_.has_value(); }
    bool display_reverses_order() const {
        return display_ && display_->reverses_order;
    }

    double f(double lambda) const { return f_(lambda); }

    double df(double lambda) const {
        check_interior(lambda);
        return df_(lambda);
    }

    double d2f(double lambda) const {
        check_interior(lambda);
        return d2f_(lambda);
    }

    /// Display transform applied to a raw sum value; identity when none.
    double display(double raw) const {
        if (!display_) return raw;
        if (display_->logarithmic && raw <= 0.0)
            throw DisplayDomainError("display transform of measure '" + name_ +
                                     "' needs a positive argument, got " +
                                     std::to_string(raw));
        return display_->apply(raw);
    }

private:
    void check_interior(double lambda) const {
        if (lambda < kEndpointGuard || lambda > 1.0 - kEndpointGuard)
            throw DerivativeAtEndpoint(
                "derivative of '" + name_ + "' requested at lambda = " +
                std::to_string(lambda) + ", outside [1e-9, 1 - 1e-9]");
    }

    std::string name_;
    std::function<double(double)> f_, df_, d2f_;
    Sense sense_;
    std::optional<DisplayTransform> display_;
};

/// Sum of f over the entries of a probability vector; f(0) terms are
/// exactly zero.
inline double eval_sum(const EntropyMeasure& m, const ProbVec& p) {
    double sum = 0.0;
    for (double x : p)
        if (x != 0.0) sum += m.f(x);
    return sum;
}

inline double eval_display(const EntropyMeasure& m, double raw) {
    return m.display(raw);
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_real(const std::string& tok, const std::string& spec) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("cannot parse number '" + tok + "' in measure spec '" +
                         spec + "'");
    }
}

}  // namespace detail

/// Parses a measure spec of the grammar
///   shannon | power:<alpha> | tsallis:<q> | renyi:<alpha> |
///   peculiar:<omega>[:<a>]
/// and builds the named measure.
inline EntropyMeasure make_measure(const std::string& spec) {
    const auto parts = detail::split(spec, ':');
    const std::string& kind = parts[0];
    const auto arity = [&](std::size_t lo, std::size_t hi) {
        if (parts.size() - 1 < lo || parts.size() - 1 > hi)
            throw ParseError(
                "bad measure spec '" + spec +
                "'; grammar: shannon | power:<alpha> | tsallis:<q> | "
                "renyi:<alpha> | peculiar:<omega>[:<a>]");
    };

    if (kind == "shannon") {
        arity(0, 0);
        return EntropyMeasure(
            spec,
            [](double x) { return x == 0.0 ? 0.0 : -x * std::log2(x); },
            [](double x) { return -(std::log(x) + 1.0) / kLn2; },
            [](double x) { return -1.0 / (x * kLn2); }, Sense::Concave);
    }
    if (kind == "power" || kind == "renyi") {
        arity(1, 1);
        const double alpha = detail::parse_real(parts[1], spec);
        if (alpha <= 0.0 || alpha == 1.0)
            throw ParamOutOfRange("measure '" + spec +
                                  "' requires alpha > 0 and alpha != 1");
        std::optional<DisplayTransform> display;
        if (kind == "renyi")
            display = DisplayTransform{
                [alpha](double t) { return std::log2(t) / (1.0 - alpha); },
                /*reverses_order=*/alpha > 1.0, /*logarithmic=*/true};
        return EntropyMeasure(
            spec, [alpha](double x) { return std::pow(x, alpha); },
            [alpha](double x) { return alpha * std::pow(x, alpha - 1.0); },
            [alpha](double x) {
                return alpha * (alpha - 1.0) * std::pow(x, alpha - 2.0);
            },
            alpha > 1.0 ? Sense::Convex : Sense::Concave, std::move(display));
    }
    if (kind == "tsallis") {
        arity(1, 1);
        const double q = detail::parse_real(parts[1], spec);
        if (q <= 0.0 || q == 1.0)
            throw ParamOutOfRange("measure '" + spec +
                                  "' requires q > 0 and q != 1");
        // Normalized as (x - x^q)/(q - 1) so f(0) = f(1) = 0 exactly;
        // f'' = -q x^(q-2) < 0, concave for every admissible q.
        return EntropyMeasure(
            spec,
            [q](double x) {
                return x == 0.0 ? 0.0 : (x - std::pow(x, q)) / (q - 1.0);
            },
            [q](double x) {
                return (1.0 - q * std::pow(x, q - 1.0)) / (q - 1.0);
            },
            [q](double x) { return -q * std::pow(x, q - 2.0); },
            Sense::Concave);
    }
    if (kind == "peculiar") {
        arity(1, 2);
        const double omega = detail::parse_real(parts[1], spec);
        const double a =
            parts.size() > 2 ? detail::parse_real(parts[2], spec) : 1.99;
        if (omega <= 0.0)
            throw ParamOutOfRange("measure '" + spec + "' requires omega > 0");
        if (a <= 0.0 || a >= 2.0)
            throw ParamOutOfRange("measure '" + spec +
                                  "' requires 0 < a < 2 so f'' = 2 + "
                                  "a*cos(omega*lambda) never vanishes");
        return EntropyMeasure(
            spec,
            [omega, a](double x) {
                return x * x + a * (1.0 - std::cos(omega * x)) / (omega * omega);
            },
            [omega, a](double x) {
                return 2.0 * x + a * std::sin(omega * x) / omega;
            },
            [omega, a](double x) { return 2.0 + a * std::cos(omega * x); },
            Sense::Convex);
    }
    throw ParseError("unknown measure kind '" + kind +
                     "'; grammar: shannon | power:<alpha> | tsallis:<q> | "
                     "renyi:<alpha> | peculiar:<omega>[:<a>]");
}

}  // namespace entrobound
