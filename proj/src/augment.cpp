#include "ltrsyn/augment.hpp"

#include <stdexcept>

#include "ltrsyn/linalg.hpp"

namespace ltr {

AugmentedPlant build_augmented(const StateSpaceModel& plant,
                               const StateSpaceModel& w1,
                               const StateSpaceModel& w2) {
    if (!plant.siso() || !w1.siso() || !w2.siso())
        throw std::invalid_argument("augmentation expects SISO plant and weightings");
    if (!plant.strictly_proper())
        throw std::invalid_argument("augmentation expects a strictly proper plant");
    if (plant.A.rows() != plant.A.cols() || w1.A.rows() != w1.A.cols() ||
        w2.A.rows() != w2.A.cols())
        throw std::invalid_argument("state matrices must be square");
    if (plant.B.rows() != plant.A.rows() || plant.C.cols() != plant.A.rows() ||
        w1.B.rows() != w1.A.rows() || w1.C.cols() != w1.A.rows() ||
        w2.B.rows() != w2.A.rows() || w2.C.cols() != w2.A.rows())
        throw std::invalid_argument("state-space dimension mismatch");
    if (!is_hurwitz(w1.A) || !is_hurwitz(w2.A))
        throw std::invalid_argument("weighting state matrices must be Hurwitz");

    const Eigen::Index n = plant.order();
    const Eigen::Index p1 = w1.order();
    const Eigen::Index p2 = w2.order();

    AugmentedPlant aug;
    aug.partition = {n, p1, p2};
    const Eigen::Index N = aug.partition.total();

    aug.A = Eigen::MatrixXd::Zero(N, N);
    aug.A.topLeftCorner(n, n) = plant.A;
    if (p1 > 0)
        aug.A.block(0, n, n, p1) = plant.B * w1.C;
    if (p2 > 0)
        aug.A.block(0, n + p1, n, p2) = plant.B * w2.C;
    if (p1 > 0)
        aug.A.block(n, n, p1, p1) = w1.A;
    if (p2 > 0)
        aug.A.block(n + p1, n + p1, p2, p2) = w2.A;

    aug.B = Eigen::VectorXd::Zero(N);
    aug.B.head(n) = plant.B * w1.D(0, 0);
    if (p1 > 0)
        aug.B.segment(n, p1) = w1.B.col(0);

    aug.F = Eigen::VectorXd::Zero(N);
    aug.F.head(n) = plant.B * w2.D(0, 0);
    if (p2 > 0)
        aug.F.tail(p2) = w2.B.col(0);

    aug.C = Eigen::RowVectorXd::Zero(N);
    aug.C.head(n) = plant.C.row(0);
    return aug;
}

} // namespace ltr
