#pragma once

#include "ltrsyn/transfer_function.hpp"

namespace ltr {

enum class WeightingKind { lead, lag };

/// Coefficients of a lead or lag weighting filter.
///
/// lead: W1(s) = (tau2/tau1)^order ((s+tau1)/(s+tau2))^order, 0 < tau1 <= tau2,
///       unit gain at DC, rising to (tau2/tau1)^order at high frequency.
/// lag:  W2(s) = tau2^order ((s+tau1)/(s+tau2))^order, 0 < tau2 <= tau1,
///       gain tau1^order at DC, falling to tau2^order at high frequency.
struct WeightingPair {
    double tau1 = 1.0;
    double tau2 = 1.0;
    int order = 1;
    WeightingKind kind = WeightingKind::lead;

    void validate() const;
};

RationalTransferFunction build_w1(const WeightingPair& pair);
RationalTransferFunction build_w2(const WeightingPair& pair);

/// Closed-form magnitude of the weighting at i*omega (omega >= 0).
double weighting_gain(const WeightingPair& pair, double omega);

} // namespace ltr
