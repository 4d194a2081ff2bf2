#pragma once

// Fourth-order DC-motor torque plant used throughout the tests, with the
// frequency points, bound sets, and known-good solutions of the bundled
// example design.

#include "ltrsyn/spec_solver.hpp"
#include "ltrsyn/transfer_function.hpp"

namespace refdesign {

inline ltr::RationalTransferFunction plant() {
    return {ltr::Polynomial({-2.069, -8001.0, -1.356e7, -9.258e9}),
            ltr::Polynomial({1.0, 414.2, 3.058e5, 1.305e7, 6.331e8})};
}

inline constexpr double kOmega11 = 6.283;
inline constexpr double kOmega12 = 46.899;
inline constexpr double kOmega21 = 753.982;
inline constexpr double kOmega22 = 2827.433;

// nominal filter-loop crossover for this plant
inline constexpr double kOmega0 = 254.0;

// tight design: lead order 3, lag order 2, bounds (-35, -18, -3, -10) dB
inline ltr::DesignSpecs tight_specs() {
    ltr::DesignSpecs s;
    s.omega11 = kOmega11;
    s.omega12 = kOmega12;
    s.omega21 = kOmega21;
    s.omega22 = kOmega22;
    s.m11_db = -35.0;
    s.m12_db = -18.0;
    s.m21_db = -3.0;
    s.m22_db = -10.0;
    s.lead_order = 3;
    s.lag_order = 2;
    return s;
}

// order-2 design: both orders 2, best attainable noise bound m22 = -4/3 dB
inline ltr::DesignSpecs order2_specs() {
    ltr::DesignSpecs s = tight_specs();
    s.lead_order = 2;
    s.lag_order = 2;
    s.m22_db = -4.0 / 3.0;
    return s;
}

// relaxed variant of the tight design: larger noise-sensitivity bounds
inline ltr::DesignSpecs relaxed_specs() {
    ltr::DesignSpecs s = tight_specs();
    s.m21_db = 4.0;
    s.m22_db = 3.0;
    return s;
}

// known-good weighting coefficients
inline constexpr double kTightTau11 = 488.553;
inline constexpr double kTightTau12 = 1.411e4;
inline constexpr double kTightTau21 = 17.760;
inline constexpr double kTightTau22 = 0.654;
inline constexpr double kOrder2Tau11 = 330.100;
inline constexpr double kOrder2Tau12 = 1.192e4;
inline constexpr double kRelaxedTau11 = 752.646;
inline constexpr double kRelaxedTau12 = 5819.489;

// achieved closed-loop magnitudes of the tight design (dB)
inline constexpr double kTightS0W11Db = -34.995;
inline constexpr double kTightS0W12Db = -17.648;
inline constexpr double kTightKS0W21Db = -2.944;
inline constexpr double kTightKS0W22Db = -10.001;

// margins: tight design and relaxed variant
inline constexpr double kTightGainMargin = 1.889;
inline constexpr double kTightPhaseMarginDeg = 15.130;
inline constexpr double kRelaxedGainMargin = 4.752;
inline constexpr double kRelaxedPhaseMarginDeg = 35.1516;

// sweep grids around the tight bounds, 7 dB-linear points per interval
inline ltr::SweepRequest sweep_request(int lead_order, int lag_order) {
    ltr::SweepRequest req;
    req.base = tight_specs();
    req.base.lead_order = lead_order;
    req.base.lag_order = lag_order;
    req.m11 = ltr::BoundGrid(-35.0, -21.0, 7);
    req.m12 = ltr::BoundGrid(-18.0, -9.0, 7);
    req.m21 = ltr::BoundGrid(-3.0, 11.0, 7);
    req.m22 = ltr::BoundGrid(-10.0, 3.0, 7);
    return req;
}

} // namespace refdesign
