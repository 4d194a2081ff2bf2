#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "ltrsyn/lqg.hpp"
#include "ltrsyn/state_space.hpp"

namespace ltr {

using FrequencyEvaluator = std::function<std::complex<double>(double)>;

struct FrequencyCurve {
    std::vector<double> omegas;                 // rad/s, strictly ascending
    std::vector<std::complex<double>> values;   // NaN where evaluation was singular
    std::string kind;
    int singular_points = 0;
};

/// Log-spaced samples of an evaluator over [lo, hi].
FrequencyCurve sample_curve(const FrequencyEvaluator& eval, double lo, double hi,
                            int points_per_decade, std::string kind);

/// Unwrapped phase in degrees, anchored at the first sample's principal value.
std::vector<double> unwrapped_phase_deg(const std::vector<std::complex<double>>& values);

struct MarginReport {
    double gain_margin = 0.0;       // linear ratio 1/|L| at the phase crossover
    double phase_margin_deg = 0.0;  // 180 deg + arg L at the gain crossover
    double gm_frequency = 0.0;      // rad/s
    double pm_frequency = 0.0;      // rad/s
    bool gm_finite = false;
    bool pm_finite = false;
};

/// Gain/phase margins of an open loop over [lo, hi]: 400-points-per-decade
/// bracketing with continuous phase tracking, bisection-refined to 1e-8
/// relative. Missing crossovers are reported as infinite via the flags.
MarginReport margins(const FrequencyEvaluator& open_loop, double lo = 1e-1, double hi = 1e5);

struct TimeSeries {
    std::vector<double> t;
    std::vector<double> y;
};

/// Unit-step response by exact zero-order-hold discretization. Requires a
/// strictly proper, internally stable closed loop.
TimeSeries step_response(const StateSpaceModel& closed_loop, double horizon, double dt);

/// Closed loop from reference to output for the plant under the compensator
/// with unity negative feedback: T = G0 K / (1 + G0 K).
StateSpaceModel closed_loop_nominal(const StateSpaceModel& plant,
                                    const StateSpaceModel& compensator);

/// Max |20 log10|a| - 20 log10|b|| between two evaluators over a log grid.
double max_db_gap(const FrequencyEvaluator& a, const FrequencyEvaluator& b, double lo,
                  double hi, int points);

/// Max relative violation of |1+M|^2 = 1 + |W2 G0|^2 over a log grid.
double kalman_check(const LqgDesign& design, double lo, double hi, int points);

/// Min of |1 + M(i omega)| over the same grid (>= 1 up to rounding).
double kbf_min_return_difference(const LqgDesign& design, double lo, double hi, int points);

} // namespace ltr
