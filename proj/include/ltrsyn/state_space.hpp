#pragma once

#include <complex>

#include <Eigen/Dense>

#include "ltrsyn/transfer_function.hpp"

namespace ltr {

/// Continuous-time state-space model (A, B, C, D).
struct StateSpaceModel {
    Eigen::MatrixXd A;  // n x n
    Eigen::MatrixXd B;  // n x q
    Eigen::MatrixXd C;  // r x n
    Eigen::MatrixXd D;  // r x q

    Eigen::Index order() const { return A.rows(); }
    bool siso() const { return B.cols() == 1 && C.rows() == 1; }
    bool strictly_proper() const { return D.cwiseAbs().maxCoeff() == 0.0; }
};

/// Controllable canonical realization of a proper SISO transfer function.
/// Biproper inputs are split by long division into D plus a strictly proper
/// remainder. Throws std::invalid_argument on improper input.
StateSpaceModel realize(const RationalTransferFunction& tf);

/// C (i*omega*I - A)^{-1} B + D for a SISO model.
std::complex<double> evaluate(const StateSpaceModel& ss, double omega);

/// Resolvent-weighted output map C (i*omega*I - A)^{-1} v for a column v.
std::complex<double> resolvent_output(const Eigen::MatrixXd& A,
                                      const Eigen::RowVectorXd& C,
                                      const Eigen::VectorXd& v, double omega);

} // namespace ltr
