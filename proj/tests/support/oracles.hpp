#pragma once

// Independent oracles for the test suite. These deliberately avoid the
// library's solver paths: the boundary systems are reduced in closed form,
// stability is checked with a Routh table, and the Riccati oracle iterates
// Lyapunov solves from scratch.

#include <cmath>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "ltrsyn/riccati.hpp"
#include "ltrsyn/transfer_function.hpp"

namespace oracles {

// Lag system |W2(i w_k)| = c_k, k = 1, 2, for order q. Substituting
// u = tau21^2, v = tau22^2 and raising to 2/q makes it linear in (u, v).
inline std::optional<std::pair<double, double>> lag_pair(int order, double c1, double c2,
                                                         double w1, double w2) {
    const double a = w1 * w1, b = w2 * w2;
    const double d1 = std::pow(c1, 2.0 / order);
    const double d2 = std::pow(c2, 2.0 / order);
    const double denom = b - a - d2 + d1;
    if (denom == 0.0)
        return std::nullopt;
    const double v = (d2 * b - d1 * a) / denom;
    if (!(v > 0.0))
        return std::nullopt;
    const double u = d1 * (a + v) / v - a;
    if (!(u >= v))
        return std::nullopt;
    return std::pair{std::sqrt(u), std::sqrt(v)};
}

// Lead system |W1(i w_k)| = e_k with x = tau11^2, y = tau12^2.
inline std::optional<std::pair<double, double>> lead_pair(int order, double e1, double e2,
                                                          double w1, double w2) {
    const double a = w1 * w1, b = w2 * w2;
    const double f1 = std::pow(e1, 2.0 / order);
    const double f2 = std::pow(e2, 2.0 / order);
    const double denom = a * (f2 - 1.0) - b * (f1 - 1.0);
    if (denom == 0.0)
        return std::nullopt;
    const double y = a * b * (f1 - f2) / denom;
    if (!(y > 0.0))
        return std::nullopt;
    const double x = a * y / (f1 * a + (f1 - 1.0) * y);
    if (!(x > 0.0) || !(y >= x))
        return std::nullopt;
    return std::pair{std::sqrt(x), std::sqrt(y)};
}

// Routh table sign check; coefficients descending. Generic inputs only
// (a vanishing first-column entry is reported as not stable).
inline bool routh_stable(std::vector<double> c) {
    const int degree = static_cast<int>(c.size()) - 1;
    if (degree <= 0)
        return true;
    if (c.front() < 0.0)
        for (double& x : c)
            x = -x;
    const std::size_t width = c.size() / 2 + 1;
    std::vector<double> prev(width, 0.0), cur(width, 0.0);
    for (std::size_t i = 0; 2 * i < c.size(); ++i)
        prev[i] = c[2 * i];
    for (std::size_t i = 0; 2 * i + 1 < c.size(); ++i)
        cur[i] = c[2 * i + 1];
    if (prev[0] <= 0.0)
        return false;
    for (int row = 2; row <= degree; ++row) {
        if (cur[0] <= 0.0)
            return false;
        std::vector<double> next(width, 0.0);
        for (std::size_t i = 0; i + 1 < width; ++i)
            next[i] = prev[i + 1] - (prev[0] / cur[0]) * cur[i + 1];
        prev = cur;
        cur = next;
    }
    return cur[0] > 0.0;
}

// Random proper transfer function with roots spread over [1e-1, 1e2].
inline ltr::RationalTransferFunction random_proper_tf(std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<int> deg_dist(1, max_degree);
    std::uniform_real_distribution<double> log_mag(-1.0, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const auto random_roots = [&](int degree) {
        std::vector<std::complex<double>> roots;
        while (static_cast<int>(roots.size()) < degree) {
            const double mag = std::pow(10.0, log_mag(rng));
            const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
            if (degree - static_cast<int>(roots.size()) >= 2 && unit(rng) < 0.5) {
                const double angle = unit(rng) * 1.2 + 0.2;
                roots.emplace_back(sign * mag * std::cos(angle), mag * std::sin(angle));
                roots.emplace_back(sign * mag * std::cos(angle), -mag * std::sin(angle));
            } else {
                roots.emplace_back(sign * mag, 0.0);
            }
        }
        return roots;
    };

    const int den_degree = deg_dist(rng);
    std::uniform_int_distribution<int> num_deg_dist(0, den_degree);
    const int num_degree = num_deg_dist(rng);
    const double gain = (unit(rng) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, 2.0 * unit(rng) - 1.0);
    return {ltr::Polynomial::from_roots(random_roots(num_degree), gain),
            ltr::Polynomial::from_roots(random_roots(den_degree))};
}

// Newton-Kleinman iteration from X = 0; valid whenever A is Hurwitz.
// An algorithmically independent route to the stabilizing CARE solution.
inline Eigen::MatrixXd kleinman_care(const Eigen::MatrixXd& A, const Eigen::MatrixXd& G,
                                     const Eigen::MatrixXd& Q, int iterations = 60) {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(A.rows(), A.cols());
    for (int it = 0; it < iterations; ++it) {
        const Eigen::MatrixXd Acl = A - G * X;
        const Eigen::MatrixXd W = Q + X * G * X;
        const Eigen::MatrixXd Xn = ltr::solve_lyapunov(Acl, W);
        if ((Xn - X).norm() <= 1e-14 * std::max(1.0, Xn.norm()))
            return Xn;
        X = Xn;
    }
    return X;
}

} // namespace oracles
