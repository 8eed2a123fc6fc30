#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "potalg/errors.hpp"
#include "potalg/specialfun.hpp"

using potalg::cplx;
using potalg::JacobiParams;

namespace {

// Oracle: (alpha+1)_n / n! * 2F1(-n, n+alpha+beta+1; alpha+1; (1-z)/2), summed term by term.
cplx hypergeometric_jacobi(int n, double alpha, double beta, cplx z) {
    double pref = 1.0;
    for (int i = 0; i < n; ++i) pref *= (alpha + 1.0 + i) / (i + 1.0);
    const cplx t = (1.0 - z) / 2.0;
    cplx sum = 0.0;
    cplx term = 1.0;
    for (int s = 0; s <= n; ++s) {
        sum += term;
        term *= (-n + s) * (n + alpha + beta + 1.0 + s) / ((alpha + 1.0 + s) * (s + 1.0)) * t;
    }
    return pref * sum;
}

bool close(cplx a, cplx b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("jacobi_poly: worked values") {
    CHECK(std::abs(potalg::jacobi_poly({0, 2.5, -7.0}, {1.3, 0.2}) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(potalg::jacobi_poly({1, 1.0, 0.0}, 2.0) - cplx(3.5)) < 1e-14);
    CHECK(std::abs(potalg::jacobi_poly({2, 0.0, 0.0}, 1.0) - cplx(1.0)) < 1e-14);
}

TEST_CASE("jacobi_poly agrees with the hypergeometric series") {
    const std::vector<JacobiParams> ps = {{1, 0.3, -0.7}, {2, -4.5, -1.5}, {3, -5.5, -2.5}, {4, 1.2, 3.4},
                                          {5, -3.5, -8.5}, {3, -6.5, 0.5}};
    const std::vector<cplx> zs = {{0.3, 0.0}, {-0.8, 0.0}, {1.7, 0.0}, {4.0, 0.0}, {0.0, 2.5}, {1.2, -0.4}};
    for (const auto& p : ps)
        for (const cplx z : zs) {
            CAPTURE(p.n);
            CAPTURE(p.alpha);
            CAPTURE(p.beta);
            CHECK(close(potalg::jacobi_poly(p, z), hypergeometric_jacobi(p.n, p.alpha, p.beta, z), 1e-11));
            CHECK(close(potalg::jacobi_poly_explicit(p, z), hypergeometric_jacobi(p.n, p.alpha, p.beta, z), 1e-11));
        }
}

TEST_CASE("jacobi_poly handles a degenerate recurrence") {
    // k + alpha + beta = 0 at k = 1 for alpha + beta = -1.
    const JacobiParams p{3, -0.25, -0.75};
    for (double x : {-0.6, 0.2, 2.5})
        CHECK(close(potalg::jacobi_poly(p, x), hypergeometric_jacobi(3, -0.25, -0.75, x), 1e-11));
    // k + alpha + beta = 0 at k = 3.
    const JacobiParams q{4, -1.5, -1.5};
    for (double x : {-0.6, 0.2, 2.5})
        CHECK(close(potalg::jacobi_poly(q, x), hypergeometric_jacobi(4, -1.5, -1.5, x), 1e-11));
}

TEST_CASE("jacobi_poly_derivative") {
    CHECK(std::abs(potalg::jacobi_poly_derivative({0, 1.3, 2.1}, 0.7)) == 0.0);
    CHECK(std::abs(potalg::jacobi_poly_derivative({1, 1.0, 0.0}, 5.0) - cplx(1.5)) < 1e-14);

    // Central difference oracle.
    const double h = 1e-5;
    for (const JacobiParams p : {JacobiParams{2, 0.5, -0.5}, JacobiParams{4, -3.5, -7.5}, JacobiParams{3, 1.5, 0.25}})
        for (double z : {0.3, -0.9, 2.2}) {
            const cplx fd = (potalg::jacobi_poly(p, z + h) - potalg::jacobi_poly(p, z - h)) / (2.0 * h);
            CHECK(close(potalg::jacobi_poly_derivative(p, z), fd, 1e-8));
        }
}

TEST_CASE("scaled forms equal P_n / z^n and P_n' / z^(n-1)") {
    const JacobiParams p{3, -4.5, -2.5};
    for (const cplx z : {cplx(1.5, 0.0), cplx(0.0, -3.0), cplx(7.0, 2.0)}) {
        CHECK(close(potalg::jacobi_poly_scaled(p, z), potalg::jacobi_poly(p, z) / std::pow(z, 3), 1e-12));
        CHECK(close(potalg::jacobi_poly_derivative_scaled(p, z), potalg::jacobi_poly_derivative(p, z) / std::pow(z, 2),
                    1e-12));
    }
    // Far out the plain value overflows; the scaled one tends to the leading coefficient.
    const std::vector<double> c = potalg::jacobi_coefficients(p);
    const cplx far = potalg::jacobi_poly_scaled(p, 1e120);
    CHECK(std::isfinite(far.real()));
    CHECK(std::abs(far - c.back()) < 1e-12 * std::abs(c.back()));
}

TEST_CASE("jacobi_coefficients reproduce the polynomial") {
    const JacobiParams p{4, -3.5, -6.5};
    const std::vector<double> c = potalg::jacobi_coefficients(p);
    REQUIRE(c.size() == 5);
    for (double z : {-1.3, 0.0, 0.4, 2.0}) {
        double horner = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) horner = horner * z + *it;
        CHECK(close(cplx(horner), hypergeometric_jacobi(4, -3.5, -6.5, z), 1e-11));
    }
}

TEST_CASE("polynomial_roots") {
    // (z - 1)(z + 2)(z - 3) = z^3 - 2z^2 - 5z + 6
    const std::vector<double> c = {6.0, -5.0, -2.0, 1.0};
    std::vector<cplx> r = potalg::polynomial_roots(c);
    REQUIRE(r.size() == 3);
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    CHECK(std::abs(r[0] - cplx(-2.0)) < 1e-10);
    CHECK(std::abs(r[1] - cplx(1.0)) < 1e-10);
    CHECK(std::abs(r[2] - cplx(3.0)) < 1e-10);

    // Roots of a Jacobi polynomial make it vanish.
    const JacobiParams p{5, -5.5, -1.5};
    const std::vector<double> jc = potalg::jacobi_coefficients(p);
    for (const cplx z : potalg::polynomial_roots(jc))
        CHECK(std::abs(potalg::jacobi_poly(p, z)) < 1e-8 * std::max(1.0, std::pow(std::abs(z), 5)));

    // Trailing zero leading coefficient is trimmed.
    CHECK(potalg::polynomial_roots(std::vector<double>{-2.0, 1.0, 0.0}).size() == 1);
    CHECK_THROWS_AS(potalg::polynomial_roots(std::vector<double>{0.0, 0.0}), potalg::DomainError);
}

TEST_CASE("jacobi_poly rejects bad input") {
    CHECK_THROWS_AS(potalg::jacobi_poly({-1, 0.0, 0.0}, 0.5), potalg::DomainError);
    CHECK_THROWS_AS(potalg::jacobi_poly({2, std::nan(""), 0.0}, 0.5), potalg::DomainError);
}
