#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "entrobound/measures.hpp"
#include "entrobound/simplex.hpp"

using namespace entrobound;

namespace {

const std::vector<std::string> kRegistry = {
    "shannon",      "power:2",     "power:3",          "power:0.5",
    "tsallis:0.5",  "tsallis:2",   "renyi:2",          "renyi:0.5",
    "peculiar:10:1.99", "peculiar:4:1.99"};

}  // namespace

TEST_CASE("make_measure anchor values") {
    CHECK(make_measure("shannon").f(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(make_measure("power:2").f(0.3) == doctest::Approx(0.09).epsilon(1e-15));
    CHECK(make_measure("renyi:2").display(0.5) ==
          doctest::Approx(1.0).epsilon(1e-15));

    const auto pec = make_measure("peculiar:10:1.99");
    for (double x : {0.1, 0.3, 0.55, 0.9})
        CHECK(pec.d2f(x) ==
              doctest::Approx(2.0 + 1.99 * std::cos(10.0 * x)).epsilon(1e-14));
}

TEST_CASE("spec grammar errors") {
    CHECK_THROWS_AS(make_measure("bogus"), ParseError);
    CHECK_THROWS_AS(make_measure("power:abc"), ParseError);
    CHECK_THROWS_AS(make_measure("power"), ParseError);
    CHECK_THROWS_AS(make_measure("power:1"), ParamOutOfRange);
    CHECK_THROWS_AS(make_measure("power:-2"), ParamOutOfRange);
    CHECK_THROWS_AS(make_measure("tsallis:1"), ParamOutOfRange);
    CHECK_THROWS_AS(make_measure("renyi:0"), ParamOutOfRange);
    CHECK_THROWS_AS(make_measure("peculiar:10:2.5"), ParamOutOfRange);
    CHECK_THROWS_AS(make_measure("peculiar:-1"), ParamOutOfRange);
}

TEST_CASE("eval_sum anchor values") {
    const auto shannon = make_measure("shannon");
    CHECK(eval_sum(shannon, uniform(4)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(eval_sum(shannon, make_probvec({0.5, 0.25, 0.25})) ==
          doctest::Approx(1.5).epsilon(1e-15));
    CHECK(eval_sum(make_measure("power:2"), uniform(10)) ==
          doctest::Approx(0.1).epsilon(1e-14));
    // f(0) terms contribute exactly zero, no NaN
    CHECK(eval_sum(shannon, pure(4)) == 0.0);
}

TEST_CASE("eval_display") {
    CHECK(eval_display(make_measure("renyi:2"), 0.1) ==
          doctest::Approx(std::log2(10.0)).epsilon(1e-14));
    CHECK(eval_display(make_measure("shannon"), 1.5) == 1.5);
    CHECK(eval_display(make_measure("renyi:0.5"), 2.0) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(eval_display(make_measure("renyi:2"), 0.0),
                    DisplayDomainError);
    CHECK(make_measure("renyi:2").display_reverses_order());
    CHECK_FALSE(make_measure("renyi:0.5").display_reverses_order());
}

TEST_CASE("endpoint behaviour") {
    for (const auto& spec : kRegistry) {
        CAPTURE(spec);
        const auto m = make_measure(spec);
        CHECK(m.f(0.0) == 0.0);
        CHECK(std::isfinite(m.f(1.0)));
        CHECK_THROWS_AS(m.df(1e-10), DerivativeAtEndpoint);
        CHECK_THROWS_AS(m.d2f(1.0), DerivativeAtEndpoint);
    }
}

namespace {

// Fourth-order stencils with a step scaled to the distance from the
// endpoints: near lambda = 1e-3 the higher derivatives of the log-type
// measures blow up and a fixed step cannot reach 1e-6.
double fd_step(double x) { return 3e-4 * std::min(x, 1.0 - x); }

double fd_first(const EntropyMeasure& m, double x) {
    const double h = fd_step(x);
    return (-m.f(x + 2 * h) + 8 * m.f(x + h) - 8 * m.f(x - h) +
            m.f(x - 2 * h)) /
           (12 * h);
}

double fd_second(const EntropyMeasure& m, double x) {
    // the 1/h^2 roundoff amplification asks for a larger step here; only
    // lambda = 0 is singular, so shrink with x but merely stay inside the
    // domain on the right
    const double h = std::min(8e-3 * x, (1.0 - x) / 2);
    return (-m.f(x + 2 * h) + 16 * m.f(x + h) - 30 * m.f(x) +
            16 * m.f(x - h) - m.f(x - 2 * h)) /
           (12 * h * h);
}

}  // namespace

TEST_CASE("derivatives match finite differences at 1e-6") {
    for (const auto& spec : kRegistry) {
        CAPTURE(spec);
        const auto m = make_measure(spec);
        for (int i = 0; i <= 200; ++i) {
            const double x = 1e-3 + (1.0 - 2e-3) * i / 200.0;
            CHECK(std::abs(m.df(x) - fd_first(m, x)) <=
                  1e-6 * std::max(1.0, std::abs(m.df(x))));
            CHECK(std::abs(m.d2f(x) - fd_second(m, x)) <=
                  1e-6 * std::max(1.0, std::abs(m.d2f(x))));
        }
    }
}

TEST_CASE("second derivative keeps one sign on a dense grid") {
    for (const auto& spec : kRegistry) {
        CAPTURE(spec);
        const auto m = make_measure(spec);
        const double want = m.sense() == Sense::Convex ? 1.0 : -1.0;
        for (int i = 0; i <= 2000; ++i) {
            const double x = 1e-6 + (1.0 - 2e-6) * i / 2000.0;
            CHECK(m.d2f(x) * want > 0.0);
        }
    }
}

TEST_CASE("first derivative is strictly monotone") {
    for (const auto& spec : kRegistry) {
        CAPTURE(spec);
        const auto m = make_measure(spec);
        const double dir = m.sense() == Sense::Convex ? 1.0 : -1.0;
        double prev = m.df(1e-3);
        for (int i = 1; i <= 500; ++i) {
            const double x = 1e-3 + (1.0 - 2e-3) * i / 500.0;
            const double cur = m.df(x);
            CHECK(dir * (cur - prev) > 0.0);
            prev = cur;
        }
    }
}

TEST_CASE("partial sums stay between the extreme one-lump splits") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& spec : kRegistry) {
        CAPTURE(spec);
        const auto m = make_measure(spec);
        for (int trial = 0; trial < 100; ++trial) {
            const double cap = 0.05 + 0.95 * unit(rng);
            const int d = 2 + static_cast<int>(rng() % 9);
            std::vector<double> v(static_cast<std::size_t>(d));
            double sum = 0.0;
            for (double& x : v) {
                x = unit(rng);
                sum += x;
            }
            double total = 0.0;
            for (double& x : v) {
                x *= cap / sum;
                total += m.f(x);
            }
            const double lo_or_hi = m.f(cap);
            const double hi_or_lo = d * m.f(cap / d);
            const double slack = 1e-12;
            if (m.sense() == Sense::Concave) {
                CHECK(total >= lo_or_hi - slack);
                CHECK(total <= hi_or_lo + slack);
            } else {
                CHECK(total <= lo_or_hi + slack);
                CHECK(total >= hi_or_lo - slack);
            }
        }
    }
}
