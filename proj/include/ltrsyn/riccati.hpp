#pragma once

#include <Eigen/Dense>

namespace ltr {

/// Continuous algebraic Riccati equation in the convention
///   X A + A^T X - X G X + Q = 0,
/// G and Q symmetric positive semidefinite, closed-loop matrix A - G X.
struct CareProblem {
    Eigen::MatrixXd A;
    Eigen::MatrixXd G;
    Eigen::MatrixXd Q;

    void validate() const;
};

struct CareSolution {
    Eigen::MatrixXd X;                        // symmetric stabilizing solution
    double residual_norm = 0.0;               // relative residual
    Eigen::VectorXcd closed_loop_spectrum;    // eig(A - G X), all in open LHP
};

/// Relative residual ||X A + A^T X - X G X + Q|| / max(1, ||X||*||A||).
double care_residual(const CareProblem& problem, const Eigen::MatrixXd& X);

/// Stabilizing solution via the ordered Schur form of the balanced
/// Hamiltonian, polished by Kleinman (Newton) iteration. Throws CareFailure
/// on imaginary-axis Hamiltonian eigenvalues, an unstable closed loop, or a
/// residual above 1e-8.
CareSolution solve_care(const CareProblem& problem);

/// Solves A^T X + X A + W = 0 for symmetric W, A Hurwitz (Bartels-Stewart).
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& W);

} // namespace ltr
