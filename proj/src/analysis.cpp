#include "ltrsyn/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "ltrsyn/errors.hpp"
#include "ltrsyn/linalg.hpp"

namespace ltr {

FrequencyCurve sample_curve(const FrequencyEvaluator& eval, double lo, double hi,
                            int points_per_decade, std::string kind) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("sample_curve needs 0 < lo < hi");
    if (points_per_decade < 1)
        throw std::invalid_argument("sample_curve needs at least one point per decade");
    const int n = std::max(2, static_cast<int>(std::round(std::log10(hi / lo) * points_per_decade)) + 1);
    FrequencyCurve curve;
    curve.kind = std::move(kind);
    curve.omegas.reserve(static_cast<std::size_t>(n));
    curve.values.reserve(static_cast<std::size_t>(n));
    const double step = std::log10(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double w = lo * std::pow(10.0, step * i);
        curve.omegas.push_back(w);
        try {
            curve.values.push_back(eval(w));
        } catch (const SingularEvaluation&) {
            curve.values.push_back({std::numeric_limits<double>::quiet_NaN(),
                                    std::numeric_limits<double>::quiet_NaN()});
            ++curve.singular_points;
        }
    }
    return curve;
}

std::vector<double> unwrapped_phase_deg(const std::vector<std::complex<double>>& values) {
    std::vector<double> phase(values.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double raw = std::arg(values[i]);
        if (i == 0) {
            phase[0] = raw;
            prev = raw;
            continue;
        }
        double delta = raw - std::remainder(prev, 2.0 * M_PI);
        delta = std::remainder(delta, 2.0 * M_PI);
        phase[i] = prev + delta;
        prev = phase[i];
    }
    for (double& p : phase)
        p *= 180.0 / M_PI;
    return phase;
}

namespace {

// Phase of eval continued from a known unwrapped value at a nearby frequency.
double continued_phase(const FrequencyEvaluator& eval, double w, double anchor_phase_rad) {
    const double raw = std::arg(eval(w));
    return anchor_phase_rad + std::remainder(raw - std::remainder(anchor_phase_rad, 2.0 * M_PI),
                                             2.0 * M_PI);
}

} // namespace

MarginReport margins(const FrequencyEvaluator& open_loop, double lo, double hi) {
    MarginReport report;
    const FrequencyCurve curve = sample_curve(open_loop, lo, hi, 400, "margin-scan");
    if (curve.singular_points > 0)
        throw NumericalError("open loop singular inside the margin scan band");
    const std::vector<double> phase_deg = unwrapped_phase_deg(curve.values);
    const std::size_t n = curve.omegas.size();

    double best_gm = std::numeric_limits<double>::infinity();
    double best_pm = std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i + 1 < n; ++i) {
        // phase crossover: unwrapped phase through -180 deg (mod 360)
        const double pa = phase_deg[i], pb = phase_deg[i + 1];
        const double ka = std::floor((pa + 180.0) / 360.0);
        for (double k = ka - 1; k <= ka + 1; ++k) {
            const double target = -180.0 + 360.0 * k;
            if ((pa - target) * (pb - target) < 0.0) {
                double a = curve.omegas[i], b = curve.omegas[i + 1];
                double phase_a_rad = phase_deg[i] * M_PI / 180.0;
                const double target_rad = target * M_PI / 180.0;
                double fa = phase_a_rad - target_rad;
                while ((b - a) > 1e-8 * a) {
                    const double mid = std::sqrt(a * b);
                    const double pm_rad = continued_phase(open_loop, mid, phase_a_rad);
                    const double fm = pm_rad - target_rad;
                    if (fa * fm <= 0.0)
                        b = mid;
                    else {
                        a = mid;
                        phase_a_rad = pm_rad;
                        fa = fm;
                    }
                }
                const double wc = 0.5 * (a + b);
                const double gm = 1.0 / std::abs(open_loop(wc));
                if (gm < best_gm) {
                    best_gm = gm;
                    report.gm_frequency = wc;
                    report.gm_finite = true;
                }
            }
        }
        // gain crossover: |L| through 1
        const double ga = std::abs(curve.values[i]) - 1.0;
        const double gb = std::abs(curve.values[i + 1]) - 1.0;
        if (ga * gb < 0.0) {
            double a = curve.omegas[i], b = curve.omegas[i + 1];
            double fa = ga;
            while ((b - a) > 1e-8 * a) {
                const double mid = std::sqrt(a * b);
                const double fm = std::abs(open_loop(mid)) - 1.0;
                if (fa * fm <= 0.0)
                    b = mid;
                else {
                    a = mid;
                    fa = fm;
                }
            }
            const double wc = 0.5 * (a + b);
            const double phase_rad =
                continued_phase(open_loop, wc, phase_deg[i] * M_PI / 180.0);
            double pm = 180.0 + phase_rad * 180.0 / M_PI;
            pm = std::remainder(pm, 360.0);
            if (std::abs(pm) < std::abs(best_pm)) {
                best_pm = pm;
                report.pm_frequency = wc;
                report.pm_finite = true;
            }
        }
    }

    report.gain_margin = best_gm;
    report.phase_margin_deg = best_pm;
    return report;
}

TimeSeries step_response(const StateSpaceModel& closed_loop, double horizon, double dt) {
    if (!closed_loop.siso())
        throw std::invalid_argument("step response expects a SISO closed loop");
    if (!closed_loop.strictly_proper())
        throw std::invalid_argument("step response expects a strictly proper closed loop");
    if (!(dt > 0.0) || !(horizon > 0.0))
        throw std::invalid_argument("step response needs positive horizon and dt");
    const Eigen::Index n = closed_loop.order();
    if (n > 0 && balanced_eigenvalues(closed_loop.A).real().maxCoeff() >= 0.0)
        throw std::invalid_argument("step response rejected: closed loop is unstable");

    // exact zero-order-hold discretization via the augmented exponential;
    // balancing first, since fast recovery poles make the raw norm explode
    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + 1, n + 1);
    aug.topLeftCorner(n, n) = closed_loop.A * dt;
    aug.topRightCorner(n, 1) = closed_loop.B * dt;
    const Eigen::VectorXd d = balance_in_place(aug);
    const Eigen::MatrixXd E = d.asDiagonal() * aug.exp() * d.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd Ad = E.topLeftCorner(n, n);
    const Eigen::VectorXd Bd = E.topRightCorner(n, 1);

    const int steps = static_cast<int>(std::floor(horizon / dt + 0.5));
    TimeSeries ts;
    ts.t.reserve(static_cast<std::size_t>(steps) + 1);
    ts.y.reserve(static_cast<std::size_t>(steps) + 1);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int k = 0; k <= steps; ++k) {
        ts.t.push_back(k * dt);
        ts.y.push_back(n > 0 ? (closed_loop.C * x)(0, 0) : 0.0);
        x = Ad * x + Bd;
    }
    return ts;
}

StateSpaceModel closed_loop_nominal(const StateSpaceModel& plant,
                                    const StateSpaceModel& compensator) {
    if (!plant.siso() || !compensator.siso())
        throw std::invalid_argument("closed loop expects SISO blocks");
    if (!plant.strictly_proper() || !compensator.strictly_proper())
        throw std::invalid_argument("closed loop expects strictly proper blocks");
    const Eigen::Index n = plant.order();
    const Eigen::Index m = compensator.order();
    StateSpaceModel cl;
    cl.A = Eigen::MatrixXd::Zero(n + m, n + m);
    cl.A.topLeftCorner(n, n) = plant.A;
    cl.A.topRightCorner(n, m) = plant.B * compensator.C;
    cl.A.bottomLeftCorner(m, n) = -compensator.B * plant.C;
    cl.A.bottomRightCorner(m, m) = compensator.A;
    cl.B = Eigen::MatrixXd::Zero(n + m, 1);
    cl.B.bottomRows(m) = compensator.B;
    cl.C = Eigen::MatrixXd::Zero(1, n + m);
    cl.C.leftCols(n) = plant.C;
    cl.D = Eigen::MatrixXd::Zero(1, 1);
    return cl;
}

double max_db_gap(const FrequencyEvaluator& a, const FrequencyEvaluator& b, double lo,
                  double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw std::invalid_argument("max_db_gap needs 0 < lo < hi and points >= 2");
    const double step = std::log10(hi / lo) / (points - 1);
    double gap = 0.0;
    for (int i = 0; i < points; ++i) {
        const double w = lo * std::pow(10.0, step * i);
        gap = std::max(gap, std::abs(20.0 * std::log10(std::abs(a(w))) -
                                     20.0 * std::log10(std::abs(b(w)))));
    }
    return gap;
}

double kalman_check(const LqgDesign& design, double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw std::invalid_argument("kalman_check needs 0 < lo < hi and points >= 2");
    const double step = std::log10(hi / lo) / (points - 1);
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double w = lo * std::pow(10.0, step * i);
        const std::complex<double> m = loop_eval(design, LoopKind::M, w);
        const std::complex<double> w2g0 = evaluate(design.w2, w) * evaluate(design.g0, w);
        const double lhs = std::norm(1.0 + m);
        const double rhs = 1.0 + std::norm(w2g0);
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    return worst;
}

double kbf_min_return_difference(const LqgDesign& design, double lo, double hi, int points) {
    const double step = std::log10(hi / lo) / (points - 1);
    double least = std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        const double w = lo * std::pow(10.0, step * i);
        least = std::min(least, std::abs(1.0 + loop_eval(design, LoopKind::M, w)));
    }
    return least;
}

} // namespace ltr
