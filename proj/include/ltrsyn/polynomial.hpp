#pragma once

#include <complex>
#include <vector>

namespace ltr {

/// Dense real polynomial in s, coefficients stored descending by power.
/// The leading coefficient is nonzero after construction (the zero
/// polynomial is represented as the single coefficient 0).
class Polynomial {
public:
    // Degree cap; augmented-plant orders in this toolkit stay well below it.
    static constexpr int kMaxDegree = 32;

    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial constant(double c) { return Polynomial({c}); }
    /// Real-coefficient polynomial with the given roots and leading coefficient.
    /// Complex roots must come in conjugate pairs.
    static Polynomial from_roots(const std::vector<std::complex<double>>& roots,
                                 double leading = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double leading() const { return coeffs_.front(); }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

    std::complex<double> eval(std::complex<double> s) const;
    /// Sum of |c_k| |s|^k; scale reference for relative singularity tests.
    double eval_magnitude_scale(std::complex<double> s) const;

    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial scaled(double factor) const;

    /// Roots as eigenvalues of the balanced companion matrix.
    std::vector<std::complex<double>> roots() const;

private:
    std::vector<double> coeffs_;
};

} // namespace ltr
