#pragma once

#include <Eigen/Dense>

#include "ltrsyn/state_space.hpp"

namespace ltr {

/// Index ranges of the (plant, lead-filter, lag-filter) state blocks.
struct BlockPartition {
    Eigen::Index plant = 0;
    Eigen::Index lead = 0;
    Eigen::Index lag = 0;

    Eigen::Index total() const { return plant + lead + lag; }
    Eigen::Index lead_begin() const { return plant; }
    Eigen::Index lag_begin() const { return plant + lead; }
};

/// Plant with the two weighting filters stacked on its inputs. The state is
/// ordered (plant, lead, lag); A is block upper triangular, with couplings
/// from the filter outputs into the plant block only. B drives the lead
/// (performance) channel, F the lag (noise) channel.
struct AugmentedPlant {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::VectorXd F;
    Eigen::RowVectorXd C;
    BlockPartition partition;
};

/// Builds the augmented model. Requires a strictly proper SISO plant and
/// SISO weighting realizations with Hurwitz state matrices.
AugmentedPlant build_augmented(const StateSpaceModel& plant,
                               const StateSpaceModel& w1,
                               const StateSpaceModel& w2);

} // namespace ltr
