#pragma once

#include <complex>

#include "ltrsyn/augment.hpp"
#include "ltrsyn/riccati.hpp"
#include "ltrsyn/state_space.hpp"
#include "ltrsyn/weighting.hpp"

namespace ltr {

/// A complete output-feedback design: augmented plant, the two Riccati
/// solutions, the recovery parameter, and the assembled compensator.
struct LqgDesign {
    RationalTransferFunction g0;  // nominal plant
    RationalTransferFunction w1;  // lead weighting
    RationalTransferFunction w2;  // lag weighting
    StateSpaceModel plant;        // canonical realization of g0
    AugmentedPlant aug;
    Eigen::MatrixXd S;            // filter Riccati solution, augmented plant
    Eigen::MatrixXd P;            // regulator Riccati solution, augmented plant
    Eigen::MatrixXd S_nom;        // filter Riccati solution, bare plant
    StateSpaceModel compensator;
    double rho = 0.0;
    double kbf_residual = 0.0;
    double lqr_residual = 0.0;
    double nominal_kbf_residual = 0.0;
};

/// Filter open-loop value C (i*omega*I - A)^{-1} S C^T.
std::complex<double> kbf_loop(const AugmentedPlant& plant, const Eigen::MatrixXd& S,
                              double omega);

/// Compensator K(s) = rho B^T P (sI - A + rho B B^T P + S C^T C)^{-1} S C^T
/// in state-space form. Rejects inputs whose loop interconnection with the
/// augmented plant is not internally stable.
StateSpaceModel build_compensator(const AugmentedPlant& plant, const Eigen::MatrixXd& S,
                                  const Eigen::MatrixXd& P, double rho);

enum class LoopKind {
    M,       // filter loop of the augmented plant
    M0,      // filter loop of the bare plant
    L,       // augmented open loop W1 G0 K
    G0K,     // nominal open loop
    S_aug,   // (1 + L)^{-1}
    S_nom,   // (1 + G0 K)^{-1}
    KS_nom,  // K (1 + G0 K)^{-1}
    S_kbf    // (1 + M)^{-1}
};

std::complex<double> loop_eval(const LqgDesign& design, LoopKind kind, double omega);

/// Max dB deviation between |L| and |M| over a log grid on [lo, hi].
double recovery_gap(const LqgDesign& design, double lo, double hi, int points);

/// Full synthesis at a fixed recovery parameter.
LqgDesign synthesize(const RationalTransferFunction& g0, const WeightingPair& lead,
                     const WeightingPair& lag, double rho);

struct RhoPolicy {
    bool automatic = true;
    double fixed_value = 1e8;
    double gap_db = 0.1;  // recovery-gap target for the automatic policy
};

struct RhoSelection {
    double rho = 0.0;
    double gap_db = 0.0;
    bool satisfied = false;  // gap target met within the search range
};

/// Automatic policy: rho in {1e8, 1e9, ..., 1e12}, first value whose
/// recovery gap on [band_lo, band_hi] is below the target.
LqgDesign synthesize_with_policy(const RationalTransferFunction& g0,
                                 const WeightingPair& lead, const WeightingPair& lag,
                                 const RhoPolicy& policy, double band_lo, double band_hi,
                                 RhoSelection* selection = nullptr);

/// Rational form of a strictly proper SISO model, via its poles and
/// transmission zeros. Used for compensator export.
RationalTransferFunction to_rational(const StateSpaceModel& ss);

} // namespace ltr
