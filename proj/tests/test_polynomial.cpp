#include <doctest.h>

#include <algorithm>
#include <complex>

#include "ltrsyn/errors.hpp"
#include "ltrsyn/polynomial.hpp"
#include "support/reference_design.hpp"

using ltr::Polynomial;
using cplx = std::complex<double>;

TEST_CASE("construction trims leading zeros and validates input") {
    const Polynomial p({0.0, 0.0, 2.0, 1.0});
    CHECK(p.degree() == 1);
    CHECK(p.coeffs() == std::vector<double>{2.0, 1.0});

    CHECK(Polynomial({0.0}).is_zero());
    CHECK(Polynomial({0.0, 0.0}).is_zero());
    CHECK_THROWS_AS(Polynomial(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(Polynomial({1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(Polynomial(std::vector<double>(40, 1.0)), std::invalid_argument);
}

TEST_CASE("evaluation uses Horner form") {
    const Polynomial p({1.0, -3.0, 2.0});  // s^2 - 3s + 2
    CHECK(p.eval(0.0) == cplx(2.0));
    CHECK(p.eval(1.0) == cplx(0.0));
    CHECK(p.eval(cplx(0.0, 1.0)) == cplx(1.0, -3.0));
}

TEST_CASE("arithmetic") {
    const Polynomial a({1.0, 1.0});
    const Polynomial b({1.0, 2.0});
    CHECK((a * b).coeffs() == std::vector<double>{1.0, 3.0, 2.0});
    CHECK((a + b).coeffs() == std::vector<double>{2.0, 3.0});
    CHECK((a - a).is_zero());
    CHECK(a.scaled(3.0).coeffs() == std::vector<double>{3.0, 3.0});
    CHECK((a * Polynomial()).is_zero());
}

TEST_CASE("roots of simple factored polynomials") {
    const Polynomial p = Polynomial({1.0, 1.0}) * Polynomial({1.0, 2.0}) * Polynomial({1.0, 3.0});
    auto roots = p.roots();
    REQUIRE(roots.size() == 3);
    std::sort(roots.begin(), roots.end(),
              [](const cplx& x, const cplx& y) { return x.real() < y.real(); });
    CHECK(std::abs(roots[0] - cplx(-3.0)) < 1e-10);
    CHECK(std::abs(roots[1] - cplx(-2.0)) < 1e-10);
    CHECK(std::abs(roots[2] - cplx(-1.0)) < 1e-10);
}

TEST_CASE("from_roots round trip with conjugate pairs") {
    const std::vector<cplx> roots{{-1.0, 2.0}, {-1.0, -2.0}, {-5.0, 0.0}};
    const Polynomial p = Polynomial::from_roots(roots, 4.0);
    CHECK(p.degree() == 3);
    CHECK(p.leading() == doctest::Approx(4.0));
    for (const auto& r : roots)
        CHECK(std::abs(p.eval(r)) < 1e-10 * p.eval_magnitude_scale(r));
    CHECK_THROWS_AS(Polynomial::from_roots({cplx(0.0, 1.0)}), std::invalid_argument);
}

TEST_CASE("roots of wide-coefficient-range polynomials are accurate") {
    // plant denominator spans nine orders of magnitude
    const Polynomial den = refdesign::plant().den;
    const auto roots = den.roots();
    REQUIRE(roots.size() == 4);
    for (const auto& r : roots) {
        CHECK(r.real() < 0.0);
        CHECK(std::abs(den.eval(r)) <= 1e-8 * den.eval_magnitude_scale(r));
    }
}

TEST_CASE("degenerate root queries") {
    CHECK(Polynomial({3.0}).roots().empty());
    CHECK_THROWS_AS(Polynomial().roots(), std::invalid_argument);
}
