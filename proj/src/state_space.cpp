#include "ltrsyn/state_space.hpp"

#include <stdexcept>

namespace ltr {

StateSpaceModel realize(const RationalTransferFunction& tf) {
    if (!tf.proper())
        throw std::invalid_argument("cannot realize an improper transfer function "
                                    "(numerator degree exceeds denominator degree)");
    const int n = tf.den.degree();
    const double den_lead = tf.den.leading();

    // long division: tf = d + remainder/den with deg(remainder) < n
    double d = 0.0;
    Polynomial remainder = tf.num;
    if (tf.num.degree() == n) {
        d = tf.num.leading() / den_lead;
        remainder = tf.num - tf.den.scaled(d);
    }

    StateSpaceModel ss;
    ss.A = Eigen::MatrixXd::Zero(n, n);
    ss.B = Eigen::MatrixXd::Zero(n, 1);
    ss.C = Eigen::MatrixXd::Zero(1, n);
    ss.D = Eigen::MatrixXd::Constant(1, 1, d);
    if (n == 0)
        return ss;

    for (int i = 0; i + 1 < n; ++i)
        ss.A(i, i + 1) = 1.0;
    // last row carries the monic denominator coefficients, ascending
    const auto& dc = tf.den.coeffs();
    for (int i = 0; i < n; ++i)
        ss.A(n - 1, i) = -dc[static_cast<std::size_t>(n - i)] / den_lead;
    ss.B(n - 1, 0) = 1.0;

    const auto& rc = remainder.coeffs();
    const int rdeg = remainder.is_zero() ? -1 : remainder.degree();
    for (int k = 0; k <= rdeg; ++k)
        ss.C(0, k) = rc[static_cast<std::size_t>(rdeg - k)] / den_lead;
    return ss;
}

namespace {

// (i*omega*I - A)^{-1} b with one step of iterative refinement; the canonical
// companion forms used here are poorly scaled and the extra residual solve
// recovers the last couple of digits.
Eigen::VectorXcd resolvent_solve(const Eigen::MatrixXd& A, const Eigen::VectorXcd& b,
                                 double omega) {
    Eigen::MatrixXcd M = -A.cast<std::complex<double>>();
    M.diagonal().array() += std::complex<double>(0.0, omega);
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    Eigen::VectorXcd x = lu.solve(b);
    x += lu.solve(b - M * x);
    return x;
}

} // namespace

std::complex<double> evaluate(const StateSpaceModel& ss, double omega) {
    if (!ss.siso())
        throw std::invalid_argument("frequency evaluation expects a SISO model");
    if (ss.order() == 0)
        return ss.D(0, 0);
    const Eigen::VectorXcd x =
        resolvent_solve(ss.A, ss.B.col(0).cast<std::complex<double>>(), omega);
    return (ss.C.row(0).cast<std::complex<double>>() * x)(0) + ss.D(0, 0);
}

std::complex<double> resolvent_output(const Eigen::MatrixXd& A,
                                      const Eigen::RowVectorXd& C,
                                      const Eigen::VectorXd& v, double omega) {
    const Eigen::VectorXcd x = resolvent_solve(A, v.cast<std::complex<double>>(), omega);
    return (C.cast<std::complex<double>>() * x)(0);
}

} // namespace ltr
