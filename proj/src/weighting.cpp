#include "ltrsyn/weighting.hpp"

#include <cmath>
#include <stdexcept>

namespace ltr {

void WeightingPair::validate() const {
    if (order < 1)
        throw std::invalid_argument("weighting order must be >= 1");
    if (!(tau1 > 0.0) || !(tau2 > 0.0) || !std::isfinite(tau1) || !std::isfinite(tau2))
        throw std::invalid_argument("weighting coefficients must be positive and finite");
    if (kind == WeightingKind::lead && tau1 > tau2)
        throw std::invalid_argument("lead weighting requires tau1 <= tau2");
    if (kind == WeightingKind::lag && tau2 > tau1)
        throw std::invalid_argument("lag weighting requires tau2 <= tau1");
}

namespace {

// (s + tau)^order expanded by the binomial theorem.
Polynomial binomial_power(double tau, int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    double binom = 1.0;  // C(order, k)
    double tpow = 1.0;   // tau^k
    for (int k = 0; k <= order; ++k) {
        c[static_cast<std::size_t>(k)] = binom * tpow;
        binom = binom * (order - k) / (k + 1.0);
        tpow *= tau;
    }
    return Polynomial(std::move(c));
}

} // namespace

RationalTransferFunction build_w1(const WeightingPair& pair) {
    if (pair.kind != WeightingKind::lead)
        throw std::invalid_argument("build_w1 expects a lead pair");
    pair.validate();
    if (pair.tau1 == pair.tau2)
        return {Polynomial::constant(1.0), Polynomial::constant(1.0)};
    const double gain = std::pow(pair.tau2 / pair.tau1, pair.order);
    return {binomial_power(pair.tau1, pair.order).scaled(gain),
            binomial_power(pair.tau2, pair.order)};
}

RationalTransferFunction build_w2(const WeightingPair& pair) {
    if (pair.kind != WeightingKind::lag)
        throw std::invalid_argument("build_w2 expects a lag pair");
    pair.validate();
    const double gain = std::pow(pair.tau2, pair.order);
    if (pair.tau1 == pair.tau2)
        return {Polynomial::constant(gain), Polynomial::constant(1.0)};
    return {binomial_power(pair.tau1, pair.order).scaled(gain),
            binomial_power(pair.tau2, pair.order)};
}

double weighting_gain(const WeightingPair& pair, double omega) {
    pair.validate();
    if (omega < 0.0)
        throw std::invalid_argument("weighting_gain expects omega >= 0");
    const double w2 = omega * omega;
    const double ratio = (w2 + pair.tau1 * pair.tau1) / (w2 + pair.tau2 * pair.tau2);
    const double shape = std::pow(ratio, pair.order / 2.0);
    if (pair.kind == WeightingKind::lead)
        return std::pow(pair.tau2 / pair.tau1, pair.order) * shape;
    return std::pow(pair.tau2, pair.order) * shape;
}

} // namespace ltr
