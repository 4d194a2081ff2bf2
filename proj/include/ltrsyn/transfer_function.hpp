#pragma once

#include <complex>

#include "ltrsyn/polynomial.hpp"

namespace ltr {

/// Ratio of two real-coefficient polynomials in s.
struct RationalTransferFunction {
    Polynomial num;
    Polynomial den;

    RationalTransferFunction() : num(Polynomial::constant(0.0)), den(Polynomial::constant(1.0)) {}
    RationalTransferFunction(Polynomial n, Polynomial d);

    int relative_degree() const { return den.degree() - num.degree(); }
    bool proper() const { return relative_degree() >= 0; }
    bool strictly_proper() const { return relative_degree() >= 1; }
};

/// num(i*omega)/den(i*omega). Throws SingularEvaluation at a pole.
std::complex<double> evaluate(const RationalTransferFunction& tf, double omega);

double magnitude(const RationalTransferFunction& tf, double omega);
double magnitude_db(const RationalTransferFunction& tf, double omega);

/// Series interconnection a*b. With reduce=true, numerator/denominator root
/// pairs matching to 1e-8 relative are cancelled.
RationalTransferFunction series(const RationalTransferFunction& a,
                                const RationalTransferFunction& b,
                                bool reduce = false);

struct Classification {
    bool stable = false;         // all poles in the open left half-plane
    bool minimum_phase = false;  // all zeros in the open left half-plane
    int relative_degree = 0;
};

Classification classify(const RationalTransferFunction& tf);

double db_from_magnitude(double magnitude);
double magnitude_from_db(double db);

} // namespace ltr
