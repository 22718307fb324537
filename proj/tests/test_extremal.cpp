#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "entrobound/extremal.hpp"

using namespace entrobound;

TEST_CASE("realize anchors") {
    auto v = realize({Form::Maxer, 4, 0.25}).values();
    for (double x : v) CHECK(x == doctest::Approx(0.25).epsilon(1e-15));

    auto m = realize({Form::Miner, 5, 0.4}).values();
    CHECK(m[0] == 0.4);
    CHECK(m[1] == 0.4);
    CHECK(m[2] == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(m[3] == 0.0);
    CHECK(m[4] == 0.0);

    auto h = realize({Form::Miner, 4, 0.5}).values();
    CHECK(h == std::vector<double>{0.5, 0.5, 0.0, 0.0});

    CHECK_THROWS_AS(realize({Form::Maxer, 4, 0.1}), Lambda0OutOfRange);
    CHECK_THROWS_AS(realize({Form::Miner, 3, 1.2}), Lambda0OutOfRange);
}

TEST_CASE("family_Hg anchors and consistency with realize") {
    const auto p2 = make_measure("power:2");
    CHECK(family_Hg(p2, {Form::Maxer, 3, 0.5}) ==
          doctest::Approx(0.375).epsilon(1e-15));
    for (int d : {2, 5, 10})
        CHECK(family_Hg(p2, {Form::Maxer, d, 1.0 / d}) ==
              doctest::Approx(1.0 / d).epsilon(1e-13));
    CHECK(family_Hg(make_measure("shannon"), {Form::Miner, 3, 1.0}) == 0.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const char* spec : {"shannon", "power:2", "tsallis:0.5"}) {
        const auto g = make_measure(spec);
        for (int trial = 0; trial < 200; ++trial) {
            const int d = 2 + static_cast<int>(rng() % 9);
            const double l0 = 1.0 / d + (1.0 - 1.0 / d) * unit(rng);
            const Form form = rng() % 2 ? Form::Maxer : Form::Miner;
            const ExtremalFamily fam{form, d, l0};
            CHECK(std::abs(family_Hg(g, fam) - eval_sum(g, realize(fam))) <=
                  1e-12);
        }
    }
}

TEST_CASE("invert_Hg anchors") {
    const auto p2 = make_measure("power:2");
    CHECK(invert_Hg(p2, Form::Maxer, 2, 0.5) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(invert_Hg(p2, Form::Maxer, 3, 0.375) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(invert_Hg(p2, Form::Miner, 3, 0.375) ==
          doctest::Approx(5.0 / 12).epsilon(1e-12));
    CHECK_THROWS_AS(invert_Hg(p2, Form::Maxer, 3, 2.0), TargetOutOfRange);
    CHECK_THROWS_AS(invert_Hg(p2, Form::Maxer, 3, 0.2), TargetOutOfRange);
}

TEST_CASE("invert_Hg round-trips lambda0") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const char* spec :
         {"shannon", "power:2", "power:0.5", "peculiar:10:1.99"}) {
        CAPTURE(spec);
        const auto g = make_measure(spec);
        for (int trial = 0; trial < 250; ++trial) {
            const int d = 2 + static_cast<int>(rng() % 49);
            const double l0 = 1.0 / d + (1.0 - 1.0 / d) * unit(rng);
            const Form form = rng() % 2 ? Form::Maxer : Form::Miner;
            const double hg = family_Hg(g, {form, d, l0});
            const double rec = invert_Hg(g, form, d, hg);
            CHECK(std::abs(rec - l0) <= 1e-9);
        }
    }
}

TEST_CASE("miner family H_g is monotone in lambda0") {
    for (const char* spec : {"power:2", "shannon"}) {
        const auto g = make_measure(spec);
        const double dir = g.sense() == Sense::Convex ? 1.0 : -1.0;
        const int d = 7;
        double prev = family_Hg(g, {Form::Miner, d, 1.0 / d});
        for (int i = 1; i <= 1000; ++i) {
            const double l0 = 1.0 / d + (1.0 - 1.0 / d) * i / 1000.0;
            const double cur = family_Hg(g, {Form::Miner, d, l0});
            CHECK(dir * (cur - prev) > 0.0);
            prev = cur;
        }
    }
}

TEST_CASE("classify_condition on the application pairs") {
    const auto shannon = make_measure("shannon");
    CHECK(classify_condition(shannon, make_measure("power:2")).verdict ==
          Verdict::StrictlyConvex);
    CHECK(classify_condition(make_measure("power:3"), make_measure("power:2"))
              .verdict == Verdict::StrictlyConvex);
    const auto report =
        classify_condition(shannon, make_measure("peculiar:10:1.99"));
    CHECK(report.verdict == Verdict::Indeterminate);
    REQUIRE(report.witness.has_value());
    // the witness triple really is a monotonicity reversal of f''/g'' vs g'
    const auto& w = *report.witness;
    CHECK(w[0] < w[1]);
    CHECK(w[1] < w[2]);
    CHECK(report.grid.size() == 4096);
}

TEST_CASE("classify_condition rejects vanishing g''") {
    // cubic with an inflection inside (0,1): not a valid g
    EntropyMeasure bad(
        "cubic", [](double x) { return x * x * x - 1.5 * x * x; },
        [](double x) { return 3 * x * x - 3 * x; },
        [](double x) { return 6 * x - 3; }, Sense::Convex);
    CHECK_THROWS_AS(classify_condition(make_measure("shannon"), bad),
                    SecondDerivativeVanishes);
}

TEST_CASE("bounds_at anchor: shannon vs purity at d = 3") {
    const auto f = make_measure("shannon");
    const auto g = make_measure("power:2");
    const auto b = bounds_at(f, g, 3, 0.375);
    CHECK(b.max_form == Form::Maxer);
    CHECK(b.hf_max == doctest::Approx(1.5).epsilon(1e-9));
    const double l = 5.0 / 12, r = 1.0 / 6;
    const double miner_hf = -2.0 * l * std::log2(l) - r * std::log2(r);
    CHECK(b.hf_min == doctest::Approx(miner_hf).epsilon(1e-9));
    CHECK(b.lambda0_min == doctest::Approx(5.0 / 12).epsilon(1e-9));
}

TEST_CASE("bounds collapse at the uniform and pure endpoints") {
    const auto f = make_measure("shannon");
    const auto g = make_measure("power:2");
    for (int d : {2, 5, 10}) {
        const auto u = bounds_at(f, g, d, 1.0 / d);
        CHECK(u.hf_min == doctest::Approx(d * f.f(1.0 / d)).epsilon(1e-10));
        CHECK(u.hf_max == doctest::Approx(d * f.f(1.0 / d)).epsilon(1e-10));
        const auto p = bounds_at(f, g, d, 1.0);
        CHECK(std::abs(p.hf_min) < 1e-10);
        CHECK(std::abs(p.hf_max) < 1e-10);
    }
}

TEST_CASE("bounds_at refuses an indeterminate pair unless overridden") {
    const auto f = make_measure("shannon");
    const auto g = make_measure("peculiar:10:1.99");
    CHECK_THROWS_AS(bounds_at(f, g, 10, 0.3), ConditionIndeterminate);
    const auto b =
        bounds_at(f, g, 10, 0.3, Verdict::Indeterminate, /*unchecked=*/true);
    CHECK_FALSE(b.bounding);
    CHECK(b.hf_min <= b.hf_max);
}

TEST_CASE("renyi display reverses which family is the max") {
    // raw coordinate is the power:2 sum; the alpha = 2 display is
    // order-reversing, so the miner family carries the displayed maximum
    const auto f2 = make_measure("renyi:2");
    const auto g = make_measure("shannon");
    const auto raw = bounds_at(make_measure("power:2"), g, 4, 1.2);
    const auto disp = bounds_at(f2, g, 4, 1.2);
    CHECK(disp.hf_max == doctest::Approx(f2.display(raw.hf_min)).epsilon(1e-12));
    CHECK(disp.hf_min == doctest::Approx(f2.display(raw.hf_max)).epsilon(1e-12));
    CHECK(disp.max_form == raw.min_form);
    CHECK(disp.hf_min <= disp.hf_max);
}

TEST_CASE("bound_curve endpoints and ordering") {
    const auto f = make_measure("shannon");
    const auto g = make_measure("power:2");
    const auto curve = bound_curve(f, g, 10, 33);
    REQUIRE(curve.rows.size() == 33);
    CHECK(curve.which_is_max == WhichMax::Maxer);
    CHECK(curve.bounding);
    CHECK(curve.rows.front().hg == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(curve.rows.front().hf_maxer ==
          doctest::Approx(std::log2(10.0)).epsilon(1e-12));
    CHECK(curve.rows.back().hg == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(curve.rows.back().hf_maxer) < 1e-10);
    CHECK(std::abs(curve.rows.back().hf_miner) < 1e-10);
    for (std::size_t i = 1; i < curve.rows.size(); ++i)
        CHECK(curve.rows[i - 1].hg <= curve.rows[i].hg);

    const auto two = bound_curve(f, g, 10, 2);
    REQUIRE(two.rows.size() == 2);
    CHECK(two.rows.front().hg == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(two.rows.back().hg == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("for d = 2 both family curves coincide") {
    const auto f = make_measure("shannon");
    const auto g = make_measure("power:2");
    const auto curve = bound_curve(f, g, 2, 65);
    for (const auto& row : curve.rows) {
        CHECK(std::abs(row.hf_maxer - row.hf_miner) <= 1e-10);
        // near the uniform endpoint H_g is quadratically flat in lambda0,
        // so the inverted parameter only matches to ~sqrt(ulp)
        CHECK(std::abs(row.lambda0_maxer - row.lambda0_miner) <= 2e-8);
    }
}

TEST_CASE("curve CSV format") {
    const auto curve =
        bound_curve(make_measure("shannon"), make_measure("power:2"), 3, 2);
    std::ostringstream os;
    write_curve_csv(os, curve, "meta");
    const std::string text = os.str();
    CHECK(text.rfind("# meta\n", 0) == 0);
    CHECK(text.find("Hg,Hf_miner,Hf_maxer,lambda0_miner,lambda0_maxer,"
                    "which_is_max,bounding") != std::string::npos);
    CHECK(text.find("maxer,true") != std::string::npos);
}
