#include <doctest.h>

#include <random>

#include "ltrsyn/analysis.hpp"
#include "ltrsyn/linalg.hpp"
#include "ltrsyn/lqg.hpp"
#include "ltrsyn/spec_solver.hpp"
#include "support/reference_design.hpp"

using namespace ltr;

namespace {

// tight-design weighting pairs solved once for the whole file
struct TightDesign {
    PlantContext ctx = make_plant_context(refdesign::plant());
    DesignOutcome outcome = solve_design_pairs(ctx, refdesign::tight_specs());
    WeightingPair lead{outcome.tau11, outcome.tau12, 3, WeightingKind::lead};
    WeightingPair lag{outcome.tau21, outcome.tau22, 2, WeightingKind::lag};
};

const TightDesign& tight() {
    static const TightDesign d;
    return d;
}

} // namespace

TEST_CASE("zero regulator gain gives the zero compensator") {
    const StateSpaceModel plant = realize(refdesign::plant());
    const StateSpaceModel unity = realize({Polynomial({1.0}), Polynomial({1.0})});
    const AugmentedPlant aug = build_augmented(plant, unity, unity);
    const CareSolution s = solve_care({aug.A.transpose(), aug.C.transpose() * aug.C,
                                       aug.F * aug.F.transpose()});
    const Eigen::MatrixXd P = Eigen::MatrixXd::Zero(4, 4);
    const StateSpaceModel K = build_compensator(aug, s.X, P, 1.0);
    CHECK(K.C.cwiseAbs().maxCoeff() == 0.0);
    for (double w : {0.0, 1.0, 100.0})
        CHECK(std::abs(evaluate(K, w)) == 0.0);
}

TEST_CASE("scalar design matches the hand-computed compensator") {
    // plant 1/(s+1), unity weightings, rho = 1: S = P = sqrt(2)-1 and
    // K(s) = (3 - 2 sqrt(2)) / (s + 2 sqrt(2) - 1)
    const RationalTransferFunction g0{Polynomial({1.0}), Polynomial({1.0, 1.0})};
    const LqgDesign d = synthesize(g0, {1.0, 1.0, 1, WeightingKind::lead},
                                   {1.0, 1.0, 1, WeightingKind::lag}, 1.0);
    const double sq2 = std::sqrt(2.0);
    CHECK(d.S(0, 0) == doctest::Approx(sq2 - 1.0).epsilon(1e-12));
    CHECK(d.P(0, 0) == doctest::Approx(sq2 - 1.0).epsilon(1e-12));
    for (double w : {0.0, 0.5, 1.0, 3.0}) {
        const std::complex<double> expected =
            (3.0 - 2.0 * sq2) / (std::complex<double>(2.0 * sq2 - 1.0, w));
        CHECK(std::abs(evaluate(d.compensator, w) - expected) <= 1e-10 * std::abs(expected));
    }
}

TEST_CASE("tight design filter loop hits the low-frequency boundary") {
    const auto& t = tight();
    const LqgDesign d = synthesize(t.ctx.g0, t.lead, t.lag, 1e8);
    const double m_db = 20.0 * std::log10(std::abs(loop_eval(d, LoopKind::M, refdesign::kOmega11)));
    CHECK(m_db == doctest::Approx(35.0).epsilon(0.01));  // ~ -m11 in dB

    // return-difference identity at the same point
    const std::complex<double> m = loop_eval(d, LoopKind::M, refdesign::kOmega11);
    const std::complex<double> w2g0 =
        evaluate(d.w2, refdesign::kOmega11) * evaluate(d.g0, refdesign::kOmega11);
    CHECK(std::norm(1.0 + m) == doctest::Approx(1.0 + std::norm(w2g0)).epsilon(1e-8));
}

TEST_CASE("rational export of the compensator matches its state-space form") {
    const auto& t = tight();
    const LqgDesign d = synthesize(t.ctx.g0, t.lead, t.lag, 1e8);
    const RationalTransferFunction ktf = to_rational(d.compensator);
    CHECK(ktf.den.degree() == 9);
    CHECK(ktf.relative_degree() >= 1);
    // the third-order lead weighting leaves near-triple root clusters in K,
    // which caps the root-based export accuracy around eps^(1/3)
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> log_w(-1.0, 4.0);
    for (int k = 0; k < 20; ++k) {
        const double w = std::pow(10.0, log_w(rng));
        const std::complex<double> via_ss = evaluate(d.compensator, w);
        const std::complex<double> via_tf = evaluate(ktf, w);
        CHECK(std::abs(via_ss - via_tf) <= 1e-7 * std::abs(via_ss));
    }
}

TEST_CASE("rational export is tight for a design without root clusters") {
    // first-order weightings keep the compensator roots simple
    const auto& t = tight();
    const LqgDesign d = synthesize(t.ctx.g0, {300.0, 3000.0, 1, WeightingKind::lead},
                                   {15.0, 0.7, 1, WeightingKind::lag}, 1e8);
    const RationalTransferFunction ktf = to_rational(d.compensator);
    std::mt19937 rng(18);
    std::uniform_real_distribution<double> log_w(-1.0, 4.0);
    for (int k = 0; k < 20; ++k) {
        const double w = std::pow(10.0, log_w(rng));
        const std::complex<double> via_ss = evaluate(d.compensator, w);
        const std::complex<double> via_tf = evaluate(ktf, w);
        CHECK(std::abs(via_ss - via_tf) <= 1e-8 * std::abs(via_ss));
    }
}

TEST_CASE("compensator approaches the inverse-based target as rho grows") {
    const auto& t = tight();
    const RationalTransferFunction w1g0 = series(build_w1(t.lead), t.ctx.g0);
    const double freqs[] = {10.0, 40.0, 100.0, 200.0, 250.0};
    double prev = 1e300;
    for (double rho : {1e4, 1e6, 1e8}) {
        const LqgDesign d = synthesize(t.ctx.g0, t.lead, t.lag, rho);
        double worst = 0.0;
        for (double w : freqs) {
            const std::complex<double> target =
                loop_eval(d, LoopKind::M, w) / evaluate(w1g0, w);
            worst = std::max(worst, std::abs(evaluate(d.compensator, w) - target));
        }
        CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("augmented open loop factors through the lead weighting") {
    const auto& t = tight();
    const LqgDesign d = synthesize(t.ctx.g0, t.lead, t.lag, 1e8);
    for (int i = 0; i < 30; ++i) {
        const double w = std::pow(10.0, -1.0 + 5.0 * i / 29.0);
        const std::complex<double> lhs = loop_eval(d, LoopKind::L, w);
        const std::complex<double> rhs =
            evaluate(d.w1, w) * loop_eval(d, LoopKind::G0K, w);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
    }
}

TEST_CASE("loop interconnection of the augmented plant is internally stable") {
    const auto& t = tight();
    const LqgDesign d = synthesize(t.ctx.g0, t.lead, t.lag, 1e8);
    const Eigen::Index N = d.aug.partition.total();
    Eigen::MatrixXd Acl(2 * N, 2 * N);
    Acl.topLeftCorner(N, N) = d.aug.A;
    Acl.topRightCorner(N, N) = d.aug.B * d.compensator.C;
    Acl.bottomLeftCorner(N, N) = -d.compensator.B * d.aug.C;
    Acl.bottomRightCorner(N, N) = d.compensator.A;
    CHECK(balanced_eigenvalues(Acl).real().maxCoeff() < 0.0);
}

TEST_CASE("recovery gap shrinks with rho and the policy picks the first passing value") {
    const auto& t = tight();
    double prev = 1e300;
    for (double rho : {1e6, 1e8, 1e10}) {
        const LqgDesign d = synthesize(t.ctx.g0, t.lead, t.lag, rho);
        const double gap = recovery_gap(d, refdesign::kOmega11, refdesign::kOmega22, 60);
        CHECK(gap < prev);
        prev = gap;
    }

    RhoSelection sel;
    const LqgDesign d = synthesize_with_policy(t.ctx.g0, t.lead, t.lag, RhoPolicy{},
                                               refdesign::kOmega11, t.ctx.omega0, &sel);
    CHECK(d.rho == doctest::Approx(1e8));
    CHECK(sel.satisfied);
    CHECK(sel.gap_db < 0.1);
}

TEST_CASE("identical evaluators have zero gap") {
    const FrequencyEvaluator f = [](double w) { return std::complex<double>(1.0 / (1.0 + w)); };
    CHECK(max_db_gap(f, f, 1e-1, 1e3, 40) == 0.0);
}

TEST_CASE("unity weightings collapse the filter loop onto the nominal one") {
    const LqgDesign d = synthesize(refdesign::plant(), {1.0, 1.0, 1, WeightingKind::lead},
                                   {1.0, 1.0, 1, WeightingKind::lag}, 1e8);
    for (double w : {0.5, 10.0, 254.0, 5e3}) {
        const std::complex<double> m = loop_eval(d, LoopKind::M, w);
        const std::complex<double> m0 = loop_eval(d, LoopKind::M0, w);
        CHECK(std::abs(m - m0) <= 1e-10 * std::abs(m0));
    }
}

TEST_CASE("sensitivity limits at large and small loop gain") {
    const auto& t = tight();
    const LqgDesign d = synthesize(t.ctx.g0, t.lead, t.lag, 1e8);

    // where |L| >> 1 the augmented sensitivity is ~ 1/|L|
    const double w_low = refdesign::kOmega11;
    const double l_mag = std::abs(loop_eval(d, LoopKind::L, w_low));
    REQUIRE(l_mag > 30.0);
    CHECK(std::abs(loop_eval(d, LoopKind::S_aug, w_low)) ==
          doctest::Approx(1.0 / l_mag).epsilon(0.05));

    // exact identity at DC: S_nom(0) = 1 / (1 + G0 K(0))
    const std::complex<double> g0k0 = loop_eval(d, LoopKind::G0K, 0.0);
    CHECK(std::abs(loop_eval(d, LoopKind::S_nom, 0.0)) ==
          doctest::Approx(1.0 / std::abs(1.0 + g0k0)).epsilon(1e-12));
}

TEST_CASE("compensator construction rejects bad recovery parameters") {
    const auto& t = tight();
    const LqgDesign d = synthesize(t.ctx.g0, t.lead, t.lag, 1e8);
    CHECK_THROWS_AS(build_compensator(d.aug, d.S, d.P, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_compensator(d.aug, d.S.topLeftCorner(3, 3), d.P, 1.0),
                    std::invalid_argument);
}
