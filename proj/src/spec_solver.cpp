#include "ltrsyn/spec_solver.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "ltrsyn/errors.hpp"
#include "ltrsyn/lqg.hpp"
#include "ltrsyn/riccati.hpp"

namespace ltr {

void DesignSpecs::validate() const {
    if (!(0.0 < omega11 && omega11 < omega12 && omega12 < omega21 && omega21 < omega22))
        throw std::invalid_argument("spec frequencies must satisfy 0 < w11 < w12 < w21 < w22");
    if (lead_order < 1 || lag_order < 1)
        throw std::invalid_argument("weighting orders must be >= 1");
}

PlantContext make_plant_context(const RationalTransferFunction& g0) {
    PlantContext ctx;
    ctx.g0 = g0;
    ctx.ss = realize(g0);
    CareProblem nominal{ctx.ss.A.transpose(), ctx.ss.C.transpose() * ctx.ss.C,
                        ctx.ss.B * ctx.ss.B.transpose()};
    const CareSolution sol = solve_care(nominal);
    ctx.s_nominal = sol.X;
    ctx.nominal_kbf_residual = sol.residual_norm;
    const Eigen::VectorXd v = ctx.s_nominal * ctx.ss.C.transpose();
    ctx.omega0 = crossover_frequency([&](double w) {
        return resolvent_output(ctx.ss.A, ctx.ss.C.row(0), v, w);
    });
    return ctx;
}

double crossover_frequency(const std::function<std::complex<double>(double)>& loop,
                           double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("crossover search needs 0 < lo < hi");
    const int per_decade = 50;
    const int n = std::max(2, static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade)) + 1);
    const double step = std::log10(hi / lo) / (n - 1);
    double prev_w = lo;
    double prev_g = std::abs(loop(lo)) - 1.0;
    if (prev_g == 0.0)
        return lo;
    for (int i = 1; i < n; ++i) {
        const double w = lo * std::pow(10.0, step * i);
        const double g = std::abs(loop(w)) - 1.0;
        if (g == 0.0)
            return w;
        if (prev_g * g < 0.0) {
            // bisect in log omega to 1e-6 relative
            double a = prev_w, b = w, ga = prev_g;
            while ((b - a) > 1e-6 * a) {
                const double mid = std::sqrt(a * b);
                const double gm = std::abs(loop(mid)) - 1.0;
                if (gm == 0.0)
                    return mid;
                if (ga * gm < 0.0)
                    b = mid;
                else {
                    a = mid;
                    ga = gm;
                }
            }
            return 0.5 * (a + b);
        }
        prev_w = w;
        prev_g = g;
    }
    throw NumericalError("loop magnitude never crosses unity in the search band");
}

namespace {

double require_positive_tau(double tau, const char* name) {
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    return tau;
}

ResidualPair residual_pair(double t1a, double t2a, double t1b, double t2b) {
    ResidualPair out;
    out.raw = {t1a - t2a, t1b - t2b};
    out.relative = {std::abs(t1a - t2a) / (std::abs(t1a) + std::abs(t2a)),
                    std::abs(t1b - t2b) / (std::abs(t1b) + std::abs(t2b))};
    return out;
}

} // namespace

ResidualPair lag_boundary_residuals(const DesignSpecs& specs, double tau21, double tau22,
                                    const LowFrequencyData& data) {
    require_positive_tau(tau21, "tau21");
    require_positive_tau(tau22, "tau22");
    const int q = specs.lag_order;
    const double c1 = 1.0 / (magnitude_from_db(specs.m11_db) * data.g0_mag_w11);
    const double c2 = 1.0 / (magnitude_from_db(specs.m12_db) * data.g0_mag_w12);
    const auto lhs = [&](double w, double c) {
        const double w2 = w * w;
        const double t1 = std::pow(tau22, q) * std::pow(w2 + tau21 * tau21, q / 2.0);
        const double t2 = c * std::pow(w2 + tau22 * tau22, q / 2.0);
        return std::pair{t1, t2};
    };
    const auto [a1, a2] = lhs(specs.omega11, c1);
    const auto [b1, b2] = lhs(specs.omega12, c2);
    return residual_pair(a1, a2, b1, b2);
}

ResidualPair lead_boundary_residuals(const DesignSpecs& specs, double tau11, double tau12,
                                     const HighFrequencyData& data) {
    require_positive_tau(tau11, "tau11");
    require_positive_tau(tau12, "tau12");
    const int q = specs.lead_order;
    const double c1 = data.m_mag_w21 / (magnitude_from_db(specs.m21_db) * data.g0_mag_w21);
    const double c2 = data.m_mag_w22 / (magnitude_from_db(specs.m22_db) * data.g0_mag_w22);
    const auto lhs = [&](double w, double c) {
        const double w2 = w * w;
        const double t1 = std::pow(tau12, q) * std::pow(w2 + tau11 * tau11, q / 2.0);
        const double t2 = c * std::pow(tau11, q) * std::pow(w2 + tau12 * tau12, q / 2.0);
        return std::pair{t1, t2};
    };
    const auto [a1, a2] = lhs(specs.omega21, c1);
    const auto [b1, b2] = lhs(specs.omega22, c2);
    return residual_pair(a1, a2, b1, b2);
}

namespace {

// Two-frequency gain-matching system in z = (ln tau_a, ln tau_b):
//   g_k(z) = log|W(i w_k; tau)| - log(c_k) = 0, k = 1, 2,
// with analytic Jacobian. `lead` switches between the two weighting shapes.
struct GainMatchSystem {
    bool lead = false;
    int order = 1;
    std::array<double, 2> omega{};
    std::array<double, 2> log_target{};

    Eigen::Vector2d residual(const Eigen::Vector2d& z) const {
        const double ta = std::exp(z(0));
        const double tb = std::exp(z(1));
        Eigen::Vector2d g;
        for (int k = 0; k < 2; ++k) {
            const double w2 = omega[static_cast<std::size_t>(k)] * omega[static_cast<std::size_t>(k)];
            double logw = 0.5 * order * (std::log(w2 + ta * ta) - std::log(w2 + tb * tb));
            logw += lead ? order * (std::log(tb) - std::log(ta)) : order * std::log(tb);
            g(k) = logw - log_target[static_cast<std::size_t>(k)];
        }
        return g;
    }

    Eigen::Matrix2d jacobian(const Eigen::Vector2d& z) const {
        const double ta = std::exp(z(0));
        const double tb = std::exp(z(1));
        Eigen::Matrix2d J;
        for (int k = 0; k < 2; ++k) {
            const double w2 = omega[static_cast<std::size_t>(k)] * omega[static_cast<std::size_t>(k)];
            if (lead) {
                J(k, 0) = -order * w2 / (w2 + ta * ta);
                J(k, 1) = order * w2 / (w2 + tb * tb);
            } else {
                J(k, 0) = order * ta * ta / (w2 + ta * ta);
                J(k, 1) = order * w2 / (w2 + tb * tb);
            }
        }
        return J;
    }
};

struct NewtonOutcome {
    bool converged = false;
    Eigen::Vector2d z{0.0, 0.0};
    int iterations = 0;
};

NewtonOutcome damped_newton(const GainMatchSystem& sys, Eigen::Vector2d z) {
    NewtonOutcome out;
    constexpr double kLogBound = 40.0;  // tau confined to e^±40
    Eigen::Vector2d g = sys.residual(z);
    for (int it = 0; it < 60; ++it) {
        out.iterations = it + 1;
        if (g.norm() < 1e-12) {
            out.converged = true;
            break;
        }
        const Eigen::Matrix2d J = sys.jacobian(z);
        const double det = J.determinant();
        if (!std::isfinite(det) || std::abs(det) < 1e-300)
            return out;
        Eigen::Vector2d step = J.partialPivLu().solve(-g);
        bool advanced = false;
        double scale = 1.0;
        for (int half = 0; half < 40; ++half) {
            const Eigen::Vector2d zt = z + scale * step;
            if (zt.cwiseAbs().maxCoeff() < kLogBound) {
                const Eigen::Vector2d gt = sys.residual(zt);
                if (gt.norm() < g.norm()) {
                    z = zt;
                    g = gt;
                    advanced = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if (!advanced)
            return out;
    }
    out.z = z;
    out.converged = out.converged || g.norm() < 1e-12;
    return out;
}

// Multi-start wrapper: base guess plus five deterministic log-jittered
// restarts before declaring the system infeasible.
PairResult solve_gain_match(const GainMatchSystem& sys, Eigen::Vector2d base_guess,
                            const std::function<ResidualPair(double, double)>& residuals) {
    PairResult result;
    std::mt19937 rng(0x5eedu);
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    for (int start = 0; start <= 5; ++start) {
        Eigen::Vector2d z = base_guess;
        if (start > 0) {
            z(0) += jitter(rng) * std::log(10.0);
            z(1) += jitter(rng) * std::log(10.0);
        }
        const NewtonOutcome newton = damped_newton(sys, z);
        result.iterations += newton.iterations;
        result.restarts = start;
        if (!newton.converged)
            continue;
        const double ta = std::exp(newton.z(0));
        const double tb = std::exp(newton.z(1));
        const ResidualPair res = residuals(ta, tb);
        if (std::max(res.relative[0], res.relative[1]) < 1e-9) {
            result.converged = true;
            result.tau1 = ta;
            result.tau2 = tb;
            result.relative_residuals = res.relative;
            result.raw_residuals = res.raw;
            return result;
        }
    }
    result.reason = "Newton iteration did not converge after multi-start";
    return result;
}

} // namespace

PairResult solve_lag_pair(const DesignSpecs& specs, const LowFrequencyData& data,
                          double omega0) {
    specs.validate();
    if (!(data.g0_mag_w11 > 0.0) || !(data.g0_mag_w12 > 0.0))
        throw std::invalid_argument("plant gains must be positive");

    const int q = specs.lag_order;
    const double c1 = 1.0 / (magnitude_from_db(specs.m11_db) * data.g0_mag_w11);
    const double c2 = 1.0 / (magnitude_from_db(specs.m12_db) * data.g0_mag_w12);

    GainMatchSystem sys;
    sys.lead = false;
    sys.order = q;
    sys.omega = {specs.omega11, specs.omega12};
    sys.log_target = {std::log(c1), std::log(c2)};

    // low-frequency plateau asymptote, clipped into the admissible band
    double t21 = std::pow(c1, 1.0 / q);
    t21 = std::min(std::max(t21, specs.omega11 * 1.001), omega0 * 0.999);
    double t22 = std::min(std::pow(c2, 1.0 / q), t21);

    PairResult result = solve_gain_match(
        sys, Eigen::Vector2d(std::log(t21), std::log(t22)),
        [&](double a, double b) { return lag_boundary_residuals(specs, a, b, data); });
    if (!result.converged)
        return result;

    result.valid = result.tau2 <= result.tau1 * (1.0 + 1e-12) && result.tau1 < omega0;
    if (!result.valid)
        result.reason = "lag pair violates the separation condition tau22 <= tau21 < omega0";
    return result;
}

PairResult solve_lead_pair(const DesignSpecs& specs, const HighFrequencyData& data,
                           double omega0) {
    specs.validate();
    if (!(data.g0_mag_w21 > 0.0) || !(data.g0_mag_w22 > 0.0) || !(data.m_mag_w21 > 0.0) ||
        !(data.m_mag_w22 > 0.0))
        throw std::invalid_argument("plant and filter gains must be positive");

    const int q = specs.lead_order;
    const double c1 = data.m_mag_w21 / (magnitude_from_db(specs.m21_db) * data.g0_mag_w21);
    const double c2 = data.m_mag_w22 / (magnitude_from_db(specs.m22_db) * data.g0_mag_w22);

    GainMatchSystem sys;
    sys.lead = true;
    sys.order = q;
    sys.omega = {specs.omega21, specs.omega22};
    sys.log_target = {std::log(c1), std::log(c2)};

    // rising-asymptote guess: |W1| ~ (w/tau11)^q between the corners
    double t11 = specs.omega21 / std::pow(std::max(c1, 1e-12), 1.0 / q);
    t11 = std::max(t11, omega0 * 1.001);
    const double t12 = std::max(t11 * std::pow(std::max(c2, 1.0), 1.0 / q), t11);

    PairResult result = solve_gain_match(
        sys, Eigen::Vector2d(std::log(t11), std::log(t12)),
        [&](double a, double b) { return lead_boundary_residuals(specs, a, b, data); });
    if (!result.converged)
        return result;

    result.valid = omega0 < result.tau1 && result.tau1 <= result.tau2 * (1.0 + 1e-12);
    if (!result.valid)
        result.reason = "lead pair violates the separation condition omega0 < tau11 <= tau12";
    return result;
}

FilterGainData lag_filter_gains(const PlantContext& ctx, const DesignSpecs& specs,
                                double tau21, double tau22) {
    WeightingPair lag{tau21, tau22, specs.lag_order, WeightingKind::lag};
    const StateSpaceModel w2 = realize(build_w2(lag));
    const StateSpaceModel unity = realize({Polynomial::constant(1.0), Polynomial::constant(1.0)});
    const AugmentedPlant aug = build_augmented(ctx.ss, unity, w2);

    CareProblem kbf{aug.A.transpose(), aug.C.transpose() * aug.C, aug.F * aug.F.transpose()};
    const CareSolution sol = solve_care(kbf);

    FilterGainData out;
    out.care_residual = sol.residual_norm;
    out.m_mag_w21 = std::abs(kbf_loop(aug, sol.X, specs.omega21));
    out.m_mag_w22 = std::abs(kbf_loop(aug, sol.X, specs.omega22));
    return out;
}

DesignOutcome solve_design_pairs(const PlantContext& ctx, const DesignSpecs& specs) {
    specs.validate();
    DesignOutcome out;
    out.omega0 = ctx.omega0;
    if (!(specs.omega12 < ctx.omega0 && ctx.omega0 < specs.omega21)) {
        out.failure_reason = "specification frequencies do not straddle the crossover omega0";
        return out;
    }

    LowFrequencyData low{magnitude(ctx.g0, specs.omega11), magnitude(ctx.g0, specs.omega12)};
    out.lag = solve_lag_pair(specs, low, ctx.omega0);
    if (!out.lag.converged || !out.lag.valid) {
        out.failure_reason = out.lag.reason;
        return out;
    }
    out.tau21 = out.lag.tau1;
    out.tau22 = out.lag.tau2;

    FilterGainData gains;
    try {
        gains = lag_filter_gains(ctx, specs, out.tau21, out.tau22);
    } catch (const NumericalError& err) {
        out.failure_reason = std::string("filter gain computation failed: ") + err.what();
        return out;
    }
    out.mgain_care_residual = gains.care_residual;

    HighFrequencyData high{magnitude(ctx.g0, specs.omega21), magnitude(ctx.g0, specs.omega22),
                           gains.m_mag_w21, gains.m_mag_w22};
    out.lead = solve_lead_pair(specs, high, ctx.omega0);
    if (!out.lead.converged || !out.lead.valid) {
        out.failure_reason = out.lead.reason;
        return out;
    }
    out.tau11 = out.lead.tau1;
    out.tau12 = out.lead.tau2;
    out.feasible = true;
    return out;
}

BoundGrid::BoundGrid(double a_db, double b_db, int n)
    : min_db(std::min(a_db, b_db)), max_db(std::max(a_db, b_db)), count(n) {
    if (n < 1)
        throw std::invalid_argument("bound grid needs at least one point");
}

double BoundGrid::at(int i) const {
    if (i < 0 || i >= count)
        throw std::out_of_range("bound grid index");
    if (count == 1)
        return min_db;
    return min_db + (max_db - min_db) * i / (count - 1);
}

std::vector<SolutionRecord> sweep(const PlantContext& ctx, const SweepRequest& request,
                                  int jobs) {
    const int n11 = request.m11.count, n12 = request.m12.count;
    const int n21 = request.m21.count, n22 = request.m22.count;
    const int cells = n11 * n12;
    const int inner = n21 * n22;
    std::vector<SolutionRecord> records(static_cast<std::size_t>(cells) * inner);

    LowFrequencyData low_base{magnitude(ctx.g0, request.base.omega11),
                              magnitude(ctx.g0, request.base.omega12)};
    const double g0_w21 = magnitude(ctx.g0, request.base.omega21);
    const double g0_w22 = magnitude(ctx.g0, request.base.omega22);

    // The lag pair and the filter gains depend only on (m11, m12); one cell
    // covers a contiguous block of combination indices, so records are
    // written deterministically regardless of the job count.
    const auto run_cell = [&](int cell) {
        const int i11 = cell / n12;
        const int i12 = cell % n12;
        DesignSpecs specs = request.base;
        specs.m11_db = request.m11.at(i11);
        specs.m12_db = request.m12.at(i12);

        PairResult lag;
        FilterGainData gains;
        bool gains_ok = false;
        std::string cell_failure;
        try {
            lag = solve_lag_pair(specs, low_base, ctx.omega0);
            if (lag.converged && lag.valid) {
                gains = lag_filter_gains(ctx, specs, lag.tau1, lag.tau2);
                gains_ok = true;
            } else {
                cell_failure = lag.reason;
            }
        } catch (const NumericalError& err) {
            cell_failure = std::string("numerical failure: ") + err.what();
        }

        for (int i21 = 0; i21 < n21; ++i21) {
            for (int i22 = 0; i22 < n22; ++i22) {
                const std::size_t idx =
                    static_cast<std::size_t>(cell) * inner + static_cast<std::size_t>(i21) * n22 + i22;
                SolutionRecord& rec = records[idx];
                rec.m11_db = specs.m11_db;
                rec.m12_db = specs.m12_db;
                rec.m21_db = request.m21.at(i21);
                rec.m22_db = request.m22.at(i22);
                rec.lag = lag;
                rec.mgain_care_residual = gains_ok ? gains.care_residual : 0.0;
                if (!gains_ok) {
                    rec.failure_reason = cell_failure;
                    continue;
                }
                DesignSpecs inner_specs = specs;
                inner_specs.m21_db = rec.m21_db;
                inner_specs.m22_db = rec.m22_db;
                HighFrequencyData high{g0_w21, g0_w22, gains.m_mag_w21, gains.m_mag_w22};
                try {
                    rec.lead = solve_lead_pair(inner_specs, high, ctx.omega0);
                } catch (const std::exception& err) {
                    rec.failure_reason = std::string("numerical failure: ") + err.what();
                    continue;
                }
                rec.valid = rec.lag.valid && rec.lead.converged && rec.lead.valid;
                if (!rec.valid)
                    rec.failure_reason = rec.lead.reason;
            }
        }
    };

    jobs = std::max(1, std::min(jobs, 64));
    if (jobs == 1 || cells == 1) {
        for (int cell = 0; cell < cells; ++cell)
            run_cell(cell);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) {
            workers.emplace_back([&] {
                for (int cell = next.fetch_add(1); cell < cells; cell = next.fetch_add(1))
                    run_cell(cell);
            });
        }
        for (auto& w : workers)
            w.join();
    }
    return records;
}

} // namespace ltr
