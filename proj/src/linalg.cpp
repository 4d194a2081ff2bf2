#include "ltrsyn/linalg.hpp"

#include <Eigen/Eigenvalues>

#include "ltrsyn/errors.hpp"

namespace ltr {

Eigen::VectorXd balance_in_place(Eigen::MatrixXd& M) {
    const Eigen::Index n = M.rows();
    Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = M.col(i).cwiseAbs().sum() - std::abs(M(i, i));
            double r = M.row(i).cwiseAbs().sum() - std::abs(M(i, i));
            if (c == 0.0 || r == 0.0)
                continue;
            const double s = c + r;
            double f = 1.0;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if (c + r < 0.95 * s) {
                done = false;
                d(i) *= f;
                M.row(i) /= f;
                M.col(i) *= f;
            }
        }
    }
    return d;
}

Eigen::VectorXcd balanced_eigenvalues(const Eigen::MatrixXd& M) {
    Eigen::MatrixXd B = M;
    balance_in_place(B);
    Eigen::EigenSolver<Eigen::MatrixXd> es(B, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigenvalue iteration failed to converge");
    return es.eigenvalues();
}

bool is_hurwitz(const Eigen::MatrixXd& M) {
    if (M.rows() == 0)
        return true;
    return balanced_eigenvalues(M).real().maxCoeff() < 0.0;
}

} // namespace ltr
