#include "ltrsyn/riccati.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ltrsyn/errors.hpp"
#include "ltrsyn/linalg.hpp"

namespace ltr {

void CareProblem::validate() const {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || G.rows() != n || G.cols() != n || Q.rows() != n || Q.cols() != n)
        throw std::invalid_argument("CARE matrices must be square and conformable");
    if (!A.allFinite() || !G.allFinite() || !Q.allFinite())
        throw std::invalid_argument("CARE matrices must be finite");
    const double gs = G.cwiseAbs().maxCoeff();
    const double qs = Q.cwiseAbs().maxCoeff();
    if ((G - G.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, gs))
        throw std::invalid_argument("CARE quadratic term G must be symmetric");
    if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, qs))
        throw std::invalid_argument("CARE constant term Q must be symmetric");
}

double care_residual(const CareProblem& p, const Eigen::MatrixXd& X) {
    if (X.rows() != p.A.rows() || X.cols() != p.A.cols())
        throw std::invalid_argument("CARE residual: solution dimensions do not match");
    const Eigen::MatrixXd R = X * p.A + p.A.transpose() * X - X * p.G * X + p.Q;
    return R.norm() / std::max(1.0, X.norm() * p.A.norm());
}

namespace {

// Exchange the k-th and (k+1)-th diagonal entries of the triangular factor T
// by a unitary similarity, updating the Schur basis U.
void swap_diagonal(Eigen::MatrixXcd& T, Eigen::MatrixXcd& U, Eigen::Index k) {
    const std::complex<double> b = T(k, k + 1);
    const std::complex<double> d = T(k + 1, k + 1) - T(k, k);
    const double nv = std::hypot(std::abs(b), std::abs(d));
    if (nv == 0.0)
        return;  // equal eigenvalues, nothing to exchange
    Eigen::Matrix2cd V;
    V << b / nv, -std::conj(d) / nv,
         d / nv,  std::conj(b) / nv;
    const Eigen::Index n = T.rows();
    T.block(0, k, n, 2) = T.block(0, k, n, 2) * V;
    T.block(k, 0, 2, n) = V.adjoint() * T.block(k, 0, 2, n);
    U.block(0, k, n, 2) = U.block(0, k, n, 2) * V;
    T(k + 1, k) = 0.0;
}

// First n columns of the Schur basis after moving every stable eigenvalue
// to the leading positions.
Eigen::MatrixXcd stable_invariant_subspace(const Eigen::MatrixXd& H) {
    Eigen::MatrixXd Hb = H;
    const Eigen::VectorXd d = balance_in_place(Hb);

    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(Hb.cast<std::complex<double>>(), true);
    if (schur.info() != Eigen::Success)
        throw CareFailure("Hamiltonian Schur decomposition did not converge");
    Eigen::MatrixXcd T = schur.matrixT();
    Eigen::MatrixXcd U = schur.matrixU();

    const Eigen::Index n2 = H.rows();
    Eigen::Index stable = 0;
    for (Eigen::Index i = 0; i < n2; ++i) {
        const std::complex<double> lam = T(i, i);
        if (std::abs(lam.real()) <= 1e-9 * (1.0 + std::abs(lam)))
            throw CareFailure("Hamiltonian eigenvalue too close to the imaginary axis");
        if (lam.real() < 0.0)
            ++stable;
    }
    if (stable != n2 / 2)
        throw CareFailure("Hamiltonian stable/antistable eigenvalue split is not even");

    bool changed = true;
    while (changed) {
        changed = false;
        for (Eigen::Index k = 0; k + 1 < n2; ++k) {
            if (T(k, k).real() >= 0.0 && T(k + 1, k + 1).real() < 0.0) {
                swap_diagonal(T, U, k);
                changed = true;
            }
        }
    }

    Eigen::MatrixXcd Us = U.leftCols(n2 / 2);
    // undo the balancing similarity on the basis
    for (Eigen::Index i = 0; i < n2; ++i)
        Us.row(i) *= d(i);
    return Us;
}

} // namespace

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& W) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || W.rows() != n || W.cols() != n)
        throw std::invalid_argument("Lyapunov matrices must be square and conformable");
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(A.cast<std::complex<double>>(), true);
    if (schur.info() != Eigen::Success)
        throw NumericalError("Lyapunov Schur decomposition did not converge");
    const Eigen::MatrixXcd& T = schur.matrixT();
    const Eigen::MatrixXcd& Q = schur.matrixU();

    const Eigen::MatrixXcd Wt = -(Q.adjoint() * W.cast<std::complex<double>>() * Q);
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(n, n);
    const Eigen::MatrixXcd L = T.adjoint();  // lower triangular
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::VectorXcd rhs = Wt.col(j);
        for (Eigen::Index i = 0; i < j; ++i)
            rhs -= Y.col(i) * T(i, j);
        Eigen::MatrixXcd Lj = L;
        Lj.diagonal().array() += T(j, j);
        Y.col(j) = Lj.triangularView<Eigen::Lower>().solve(rhs);
    }
    Eigen::MatrixXd X = (Q * Y * Q.adjoint()).real();
    return 0.5 * (X + X.transpose());
}

CareSolution solve_care(const CareProblem& problem) {
    problem.validate();
    const Eigen::Index n = problem.A.rows();

    // equilibrate the quadratic and constant terms; for G = rho B B^T this
    // reduces to the usual sqrt(rho) rescaling of the cheap-control problem
    const double gn = problem.G.norm();
    const double qn = problem.Q.norm();
    const double sigma = (gn > 0.0 && qn > 0.0) ? std::sqrt(gn / qn) : 1.0;

    Eigen::MatrixXd H(2 * n, 2 * n);
    H.topLeftCorner(n, n) = problem.A;
    H.topRightCorner(n, n) = -problem.G / sigma;
    H.bottomLeftCorner(n, n) = -problem.Q * sigma;
    H.bottomRightCorner(n, n) = -problem.A.transpose();

    const Eigen::MatrixXcd U = stable_invariant_subspace(H);
    const Eigen::MatrixXcd U1 = U.topRows(n);
    const Eigen::MatrixXcd U2 = U.bottomRows(n);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(U1.transpose());
    Eigen::MatrixXd X = lu.solve(U2.transpose()).transpose().real();
    X = 0.5 * (X + X.transpose());
    X /= sigma;

    // Kleinman polish on the original equation
    double res = care_residual(problem, X);
    for (int it = 0; it < 5 && res > 1e-12; ++it) {
        const Eigen::MatrixXd Acl = problem.A - problem.G * X;
        const Eigen::MatrixXd W = problem.Q + X * problem.G * X;
        Eigen::MatrixXd Xn;
        try {
            Xn = solve_lyapunov(Acl, W);
        } catch (const NumericalError&) {
            break;
        }
        const double rn = care_residual(problem, Xn);
        if (!Xn.allFinite() || rn >= res)
            break;
        X = Xn;
        res = rn;
    }

    if (!(res <= 1e-8))
        throw CareFailure("CARE residual " + std::to_string(res) + " exceeds tolerance 1e-8");

    CareSolution sol;
    sol.X = X;
    sol.residual_norm = res;
    sol.closed_loop_spectrum = balanced_eigenvalues(problem.A - problem.G * X);
    if (sol.closed_loop_spectrum.size() > 0 &&
        sol.closed_loop_spectrum.real().maxCoeff() >= 0.0)
        throw CareFailure("CARE closed-loop spectrum is not strictly stable");
    return sol;
}

} // namespace ltr
