#include "ltrsyn/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltrsyn/errors.hpp"
#include "ltrsyn/linalg.hpp"

namespace ltr {

Polynomial::Polynomial(std::vector<double> coeffs) {
    if (coeffs.empty())
        throw std::invalid_argument("polynomial needs at least one coefficient");
    for (double c : coeffs)
        if (!std::isfinite(c))
            throw std::invalid_argument("polynomial coefficients must be finite");
    // normalize: drop leading zeros, keep at least one coefficient
    std::size_t first = 0;
    while (first + 1 < coeffs.size() && coeffs[first] == 0.0)
        ++first;
    coeffs_.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(first), coeffs.end());
    if (degree() > kMaxDegree)
        throw std::invalid_argument("polynomial degree exceeds cap");
}

Polynomial Polynomial::from_roots(const std::vector<std::complex<double>>& roots,
                                  double leading) {
    // multiply conjugate pairs into real quadratics, real roots into linears
    std::vector<std::complex<double>> pending(roots.begin(), roots.end());
    Polynomial p = Polynomial::constant(leading);
    while (!pending.empty()) {
        std::complex<double> r = pending.back();
        pending.pop_back();
        const double imag_tol = 1e-12 * (1.0 + std::abs(r));
        if (std::abs(r.imag()) <= imag_tol) {
            p = p * Polynomial({1.0, -r.real()});
            continue;
        }
        // find and consume the conjugate partner
        auto it = std::min_element(pending.begin(), pending.end(),
                                   [&](const std::complex<double>& a, const std::complex<double>& b) {
                                       return std::abs(a - std::conj(r)) < std::abs(b - std::conj(r));
                                   });
        if (it == pending.end() || std::abs(*it - std::conj(r)) > 1e-6 * (1.0 + std::abs(r)))
            throw std::invalid_argument("complex roots must come in conjugate pairs");
        pending.erase(it);
        p = p * Polynomial({1.0, -2.0 * r.real(), std::norm(r)});
    }
    return p;
}

std::complex<double> Polynomial::eval(std::complex<double> s) const {
    std::complex<double> acc = 0.0;
    for (double c : coeffs_)
        acc = acc * s + c;
    return acc;
}

double Polynomial::eval_magnitude_scale(std::complex<double> s) const {
    double acc = 0.0;
    const double m = std::abs(s);
    for (double c : coeffs_)
        acc = acc * m + std::abs(c);
    return acc;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    if (is_zero() || other.is_zero())
        return Polynomial();
    std::vector<double> out(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * other.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    const std::size_t n = std::max(coeffs_.size(), other.coeffs_.size());
    std::vector<double> out(n, 0.0);
    const std::size_t off_a = n - coeffs_.size();
    const std::size_t off_b = n - other.coeffs_.size();
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        out[off_a + i] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        out[off_b + i] += other.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    return *this + other.scaled(-1.0);
}

Polynomial Polynomial::scaled(double factor) const {
    std::vector<double> out = coeffs_;
    for (double& c : out)
        c *= factor;
    return Polynomial(std::move(out));
}

std::vector<std::complex<double>> Polynomial::roots() const {
    if (is_zero())
        throw std::invalid_argument("the zero polynomial has no root set");
    const int n = degree();
    if (n == 0)
        return {};
    // monic companion matrix, balanced before the eigensolve
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i)
        companion(i + 1, i) = 1.0;
    const double lead = coeffs_.front();
    for (int i = 0; i < n; ++i)
        companion(0, i) = -coeffs_[static_cast<std::size_t>(i) + 1] / lead;
    const Eigen::VectorXcd ev = balanced_eigenvalues(companion);
    return {ev.data(), ev.data() + ev.size()};
}

} // namespace ltr
