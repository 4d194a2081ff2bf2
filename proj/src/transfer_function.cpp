#include "ltrsyn/transfer_function.hpp"

#include <cmath>
#include <stdexcept>

#include "ltrsyn/errors.hpp"

namespace ltr {

RationalTransferFunction::RationalTransferFunction(Polynomial n, Polynomial d)
    : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero())
        throw std::invalid_argument("transfer function denominator is identically zero");
}

std::complex<double> evaluate(const RationalTransferFunction& tf, double omega) {
    const std::complex<double> s(0.0, omega);
    const std::complex<double> d = tf.den.eval(s);
    const double scale = tf.den.eval_magnitude_scale(s);
    if (std::abs(d) <= 1e-12 * scale)
        throw SingularEvaluation("transfer function evaluated at a pole (omega = " +
                                 std::to_string(omega) + ")");
    return tf.num.eval(s) / d;
}

double magnitude(const RationalTransferFunction& tf, double omega) {
    return std::abs(evaluate(tf, omega));
}

double magnitude_db(const RationalTransferFunction& tf, double omega) {
    return db_from_magnitude(magnitude(tf, omega));
}

namespace {

// Remove root pairs shared by num and den to 1e-8 relative.
void cancel_common_roots(std::vector<std::complex<double>>& zeros,
                         std::vector<std::complex<double>>& poles) {
    for (std::size_t i = 0; i < zeros.size();) {
        bool cancelled = false;
        for (std::size_t j = 0; j < poles.size(); ++j) {
            const double tol = 1e-8 * std::max(1.0, std::max(std::abs(zeros[i]), std::abs(poles[j])));
            if (std::abs(zeros[i] - poles[j]) <= tol) {
                zeros.erase(zeros.begin() + static_cast<std::ptrdiff_t>(i));
                poles.erase(poles.begin() + static_cast<std::ptrdiff_t>(j));
                cancelled = true;
                break;
            }
        }
        if (!cancelled)
            ++i;
    }
}

} // namespace

RationalTransferFunction series(const RationalTransferFunction& a,
                                const RationalTransferFunction& b,
                                bool reduce) {
    Polynomial num = a.num * b.num;
    Polynomial den = a.den * b.den;
    if (!reduce || num.is_zero())
        return {num, den};
    auto zeros = num.roots();
    auto poles = den.roots();
    cancel_common_roots(zeros, poles);
    return {Polynomial::from_roots(zeros, num.leading()),
            Polynomial::from_roots(poles, den.leading())};
}

Classification classify(const RationalTransferFunction& tf) {
    if (tf.num.is_zero())
        throw std::invalid_argument("cannot classify a degenerate (zero) transfer function");
    Classification out;
    out.relative_degree = tf.relative_degree();
    out.stable = true;
    for (const auto& p : tf.den.roots())
        out.stable = out.stable && p.real() < 0.0;
    out.minimum_phase = true;
    for (const auto& z : tf.num.roots())
        out.minimum_phase = out.minimum_phase && z.real() < 0.0;
    return out;
}

double db_from_magnitude(double m) { return 20.0 * std::log10(m); }
double magnitude_from_db(double db) { return std::pow(10.0, db / 20.0); }

} // namespace ltr
