#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ltrsyn/augment.hpp"
#include "ltrsyn/state_space.hpp"
#include "ltrsyn/transfer_function.hpp"
#include "ltrsyn/weighting.hpp"

namespace ltr {

/// Frequency/bound specification for one design: sensitivity bounds m11, m12
/// below crossover, controller-noise-sensitivity bounds m21, m22 above it.
struct DesignSpecs {
    double omega11 = 0.0, omega12 = 0.0;  // rad/s, below crossover
    double omega21 = 0.0, omega22 = 0.0;  // rad/s, above crossover
    double m11_db = 0.0, m12_db = 0.0;    // sensitivity bounds, dB
    double m21_db = 0.0, m22_db = 0.0;    // controller noise bounds, dB
    int lead_order = 1;                   // order of W1
    int lag_order = 1;                    // order of W2

    void validate() const;
};

/// Plant data shared by every solve for a given plant: canonical realization,
/// the bare-plant filter Riccati solution, and the filter-loop crossover.
struct PlantContext {
    RationalTransferFunction g0;
    StateSpaceModel ss;
    Eigen::MatrixXd s_nominal;
    double nominal_kbf_residual = 0.0;
    double omega0 = 0.0;  // unity-gain crossover of the bare-plant filter loop
};

PlantContext make_plant_context(const RationalTransferFunction& g0);

/// Smallest omega in [lo, hi] with |loop(i*omega)| = 1, found from a log-grid
/// bracket and refined by bisection to 1e-6 relative. Throws NumericalError
/// when the magnitude never crosses unity in the band.
double crossover_frequency(const std::function<std::complex<double>(double)>& loop,
                           double lo = 1e-2, double hi = 1e6);

struct LowFrequencyData {
    double g0_mag_w11 = 0.0;
    double g0_mag_w12 = 0.0;
};

struct HighFrequencyData {
    double g0_mag_w21 = 0.0;
    double g0_mag_w22 = 0.0;
    double m_mag_w21 = 0.0;
    double m_mag_w22 = 0.0;
};

struct ResidualPair {
    std::array<double, 2> raw{};       // boundary-equation left-hand sides
    std::array<double, 2> relative{};  // |t1 - t2| / (|t1| + |t2|)
};

/// Residuals of the low-frequency boundary equations
///   |W2(i w1k)| = 1 / (m1k |G0(i w1k)|), k = 1, 2.
ResidualPair lag_boundary_residuals(const DesignSpecs& specs, double tau21, double tau22,
                                    const LowFrequencyData& data);

/// Residuals of the high-frequency boundary equations
///   |W1(i w2k)| = |M(i w2k)| / (m2k |G0(i w2k)|), k = 1, 2.
ResidualPair lead_boundary_residuals(const DesignSpecs& specs, double tau11, double tau12,
                                     const HighFrequencyData& data);

struct PairResult {
    bool converged = false;
    bool valid = false;  // separation conditions against omega0
    double tau1 = 0.0;   // lag: tau21, lead: tau11
    double tau2 = 0.0;   // lag: tau22, lead: tau12
    std::array<double, 2> relative_residuals{};
    std::array<double, 2> raw_residuals{};
    int iterations = 0;
    int restarts = 0;
    std::string reason;
};

/// Damped Newton in log(tau) space with multi-start; converged means both
/// relative residuals below 1e-9 plus the lag-side separation condition
/// tau22 <= tau21 < omega0.
PairResult solve_lag_pair(const DesignSpecs& specs, const LowFrequencyData& data,
                          double omega0);

/// As solve_lag_pair, with the lead-side condition omega0 < tau11 <= tau12.
PairResult solve_lead_pair(const DesignSpecs& specs, const HighFrequencyData& data,
                           double omega0);

/// Filter-loop gains |M(i w2k)| for a given lag pair, computed on the plant
/// augmented with W2 alone (the filter solution is independent of W1).
struct FilterGainData {
    double m_mag_w21 = 0.0;
    double m_mag_w22 = 0.0;
    double care_residual = 0.0;
};

FilterGainData lag_filter_gains(const PlantContext& ctx, const DesignSpecs& specs,
                                double tau21, double tau22);

/// One complete two-stage solve: lag pair from the low-frequency equations,
/// filter gains, then the lead pair from the high-frequency equations.
struct DesignOutcome {
    bool feasible = false;
    double tau11 = 0.0, tau12 = 0.0, tau21 = 0.0, tau22 = 0.0;
    double omega0 = 0.0;
    PairResult lag, lead;
    double mgain_care_residual = 0.0;
    std::string failure_reason;
};

DesignOutcome solve_design_pairs(const PlantContext& ctx, const DesignSpecs& specs);

/// Inclusive dB-linear grid over a bound interval; endpoints are normalized
/// so min <= max regardless of quoting order.
struct BoundGrid {
    double min_db = 0.0;
    double max_db = 0.0;
    int count = 1;

    BoundGrid() = default;
    BoundGrid(double a_db, double b_db, int n);
    double at(int i) const;
};

struct SweepRequest {
    DesignSpecs base;  // frequencies and orders; bounds come from the grids
    BoundGrid m11, m12, m21, m22;
};

struct SolutionRecord {
    double m11_db = 0.0, m12_db = 0.0, m21_db = 0.0, m22_db = 0.0;
    PairResult lag, lead;
    bool valid = false;
    double mgain_care_residual = 0.0;
    std::string failure_reason;
};

/// Every bound combination, attempted in combination-index order
/// (m11 outermost, m22 innermost); rows are deterministic for any job count.
std::vector<SolutionRecord> sweep(const PlantContext& ctx, const SweepRequest& request,
                                  int jobs);

} // namespace ltr
