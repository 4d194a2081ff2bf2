#include <doctest.h>

#include <cmath>

#include "ltrsyn/state_space.hpp"
#include "ltrsyn/weighting.hpp"
#include "support/reference_design.hpp"

using namespace ltr;

TEST_CASE("pair validation") {
    CHECK_THROWS_AS((WeightingPair{2.0, 1.0, 1, WeightingKind::lead}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((WeightingPair{1.0, 2.0, 1, WeightingKind::lag}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((WeightingPair{1.0, 2.0, 0, WeightingKind::lead}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((WeightingPair{-1.0, 2.0, 1, WeightingKind::lead}.validate()),
                    std::invalid_argument);
    CHECK_NOTHROW((WeightingPair{1.0, 1.0, 2, WeightingKind::lead}.validate()));
}

TEST_CASE("equal coefficients collapse to constants") {
    const auto w1 = build_w1({1.0, 1.0, 1, WeightingKind::lead});
    CHECK(w1.num.coeffs() == std::vector<double>{1.0});
    CHECK(w1.den.coeffs() == std::vector<double>{1.0});
    CHECK(realize(w1).order() == 0);

    const auto w2 = build_w2({2.0, 2.0, 3, WeightingKind::lag});
    CHECK(w2.num.coeffs() == std::vector<double>{8.0});
    CHECK(w2.den.coeffs() == std::vector<double>{1.0});
}

TEST_CASE("first-order lead expansion") {
    const auto w1 = build_w1({1.0, 10.0, 1, WeightingKind::lead});
    CHECK(w1.num.coeffs() == std::vector<double>{10.0, 10.0});
    CHECK(w1.den.coeffs() == std::vector<double>{1.0, 10.0});
    CHECK(magnitude(w1, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(classify(w1).stable);
    CHECK(classify(w1).minimum_phase);
    CHECK(classify(w1).relative_degree == 0);
}

TEST_CASE("high-frequency lead asymptote for the tight-design pair") {
    const WeightingPair pair{refdesign::kTightTau11, refdesign::kTightTau12, 2,
                             WeightingKind::lead};
    const double plateau = std::pow(pair.tau2 / pair.tau1, 2);
    CHECK(plateau == doctest::Approx(834.1).epsilon(2e-4));
    CHECK(db_from_magnitude(plateau) == doctest::Approx(58.4).epsilon(1e-3));
    CHECK(weighting_gain(pair, 1e6 * pair.tau2) == doctest::Approx(plateau).epsilon(1e-9));
}

TEST_CASE("low-frequency lag plateau for the tight-design pair at order 3") {
    const WeightingPair pair{refdesign::kTightTau21, refdesign::kTightTau22, 3,
                             WeightingKind::lag};
    const double plateau = std::pow(pair.tau1, 3);
    CHECK(plateau == doctest::Approx(5601.8).epsilon(1e-4));
    CHECK(db_from_magnitude(plateau) == doctest::Approx(74.97).epsilon(1e-4));
    CHECK(weighting_gain(pair, 0.0) == doctest::Approx(plateau).epsilon(1e-12));
}

TEST_CASE("asymptotes at extreme frequencies") {
    const WeightingPair lead{3.0, 41.0, 4, WeightingKind::lead};
    CHECK(weighting_gain(lead, 1e-6 * lead.tau1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(weighting_gain(lead, 1e6 * lead.tau2) ==
          doctest::Approx(std::pow(lead.tau2 / lead.tau1, 4)).epsilon(1e-9));

    const WeightingPair lag{7.5, 0.2, 3, WeightingKind::lag};
    CHECK(weighting_gain(lag, 1e-6 * lag.tau2) ==
          doctest::Approx(std::pow(lag.tau1, 3)).epsilon(1e-9));
    CHECK(weighting_gain(lag, 1e6 * lag.tau1) ==
          doctest::Approx(std::pow(lag.tau2, 3)).epsilon(1e-9));
}

TEST_CASE("closed-form gain matches the realized transfer function") {
    const WeightingPair lead{2.0, 35.0, 3, WeightingKind::lead};
    const WeightingPair lag{12.0, 0.4, 2, WeightingKind::lag};
    const auto w1 = build_w1(lead);
    const auto w2 = build_w2(lag);
    for (int i = 0; i <= 60; ++i) {
        const double w = std::pow(10.0, -3.0 + i * 0.15);
        CHECK(weighting_gain(lead, w) == doctest::Approx(magnitude(w1, w)).epsilon(1e-12));
        CHECK(weighting_gain(lag, w) == doctest::Approx(magnitude(w2, w)).epsilon(1e-12));
    }
}

TEST_CASE("lead gain is nondecreasing and lag gain nonincreasing") {
    const WeightingPair lead{1.5, 80.0, 2, WeightingKind::lead};
    const WeightingPair lag{9.0, 0.1, 4, WeightingKind::lag};
    double prev_lead = weighting_gain(lead, 0.0);
    double prev_lag = weighting_gain(lag, 0.0);
    for (int i = 0; i <= 100; ++i) {
        const double w = std::pow(10.0, -2.0 + i * 0.07);
        const double gl = weighting_gain(lead, w);
        const double gg = weighting_gain(lag, w);
        CHECK(gl >= prev_lead * (1.0 - 1e-13));
        CHECK(gg <= prev_lag * (1.0 + 1e-13));
        prev_lead = gl;
        prev_lag = gg;
    }
}

TEST_CASE("unit-frequency lead gain closed form") {
    // 10 sqrt(2/101) for the (1, 10) first-order lead at omega = 1
    CHECK(weighting_gain({1.0, 10.0, 1, WeightingKind::lead}, 1.0) ==
          doctest::Approx(10.0 * std::sqrt(2.0 / 101.0)).epsilon(1e-14));
}

TEST_CASE("kind mismatches and negative frequencies are rejected") {
    CHECK_THROWS_AS((build_w1({1.0, 2.0, 1, WeightingKind::lag})), std::invalid_argument);
    CHECK_THROWS_AS((build_w2({2.0, 1.0, 1, WeightingKind::lead})), std::invalid_argument);
    CHECK_THROWS_AS((weighting_gain({1.0, 2.0, 1, WeightingKind::lead}, -1.0)),
                    std::invalid_argument);
}
