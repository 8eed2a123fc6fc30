#include "potalg/specialfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "potalg/errors.hpp"

namespace potalg {

namespace {

void check_args(const JacobiParams& p, cplx z) {
    if (p.n < 0) throw DomainError("jacobi: negative degree");
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta))
        throw DomainError("jacobi: non-finite index");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("jacobi: non-finite argument");
}

// Generalized binomial coefficient binom(x, j) for real x and integer j >= 0.
double binom(double x, int j) {
    double r = 1.0;
    for (int i = 1; i <= j; ++i) r *= (x - j + i) / i;
    return r;
}

// Recurrence denominators vanish when k+alpha+beta or 2k+alpha+beta-2 does.
bool recurrence_degenerate(const JacobiParams& p) {
    const double s = p.alpha + p.beta;
    constexpr double tol = 1e-6;
    for (int k = 2; k <= p.n; ++k) {
        if (std::abs(k + s) < tol || std::abs(2.0 * k + s - 2.0) < tol) return true;
    }
    return false;
}

// Explicit sum in terms of u = (z-1)/2, v = (z+1)/2 (or their z-scaled forms).
cplx explicit_sum(const JacobiParams& p, cplx u, cplx v) {
    cplx total = 0.0;
    for (int s = 0; s <= p.n; ++s) {
        const double c = binom(p.n + p.alpha, p.n - s) * binom(p.n + p.beta, s);
        total += c * std::pow(u, s) * std::pow(v, p.n - s);
    }
    return total;
}

// Three-term recurrence. With `scaled`, returns P_n(z)/z^n using w = 1/z.
cplx recurrence(const JacobiParams& p, cplx z, bool scaled) {
    const double a = p.alpha;
    const double b = p.beta;
    const double s = a + b;
    const cplx w = scaled ? 1.0 / z : cplx(0.0);
    cplx prev = 1.0;
    cplx cur = scaled ? 0.5 * (a - b) * w + 0.5 * (s + 2.0) : 0.5 * (a - b) + 0.5 * (s + 2.0) * z;
    if (p.n == 0) return prev;
    for (int k = 2; k <= p.n; ++k) {
        const double t = 2.0 * k + s;
        const double den = 2.0 * k * (k + s) * (t - 2.0);
        const double c1 = (t - 1.0) * t * (t - 2.0);
        const double c0 = (t - 1.0) * (a * a - b * b);
        const double c2 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * t;
        cplx next;
        if (scaled)
            next = ((c1 + c0 * w) * cur - c2 * w * w * prev) / den;
        else
            next = ((c1 * z + c0) * cur - c2 * prev) / den;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

cplx jacobi_poly_explicit(const JacobiParams& p, cplx z) {
    check_args(p, z);
    return explicit_sum(p, 0.5 * (z - 1.0), 0.5 * (z + 1.0));
}

cplx jacobi_poly(const JacobiParams& p, cplx z) {
    check_args(p, z);
    if (recurrence_degenerate(p)) return explicit_sum(p, 0.5 * (z - 1.0), 0.5 * (z + 1.0));
    return recurrence(p, z, false);
}

cplx jacobi_poly_scaled(const JacobiParams& p, cplx z) {
    check_args(p, z);
    if (z == cplx(0.0)) throw DomainError("jacobi_poly_scaled: z = 0");
    if (recurrence_degenerate(p)) {
        const cplx w = 1.0 / z;
        return explicit_sum(p, 0.5 * (1.0 - w), 0.5 * (1.0 + w));
    }
    return recurrence(p, z, true);
}

cplx jacobi_poly_derivative(const JacobiParams& p, cplx z) {
    check_args(p, z);
    if (p.n == 0) return 0.0;
    const JacobiParams q{p.n - 1, p.alpha + 1.0, p.beta + 1.0};
    return 0.5 * (p.n + p.alpha + p.beta + 1.0) * jacobi_poly(q, z);
}

cplx jacobi_poly_derivative_scaled(const JacobiParams& p, cplx z) {
    check_args(p, z);
    if (p.n == 0) return 0.0;
    const JacobiParams q{p.n - 1, p.alpha + 1.0, p.beta + 1.0};
    return 0.5 * (p.n + p.alpha + p.beta + 1.0) * jacobi_poly_scaled(q, z);
}

std::vector<double> jacobi_coefficients(const JacobiParams& p) {
    check_args(p, 0.0);
    // ((z-1)/2)^s ((z+1)/2)^(n-s) expanded by repeated polynomial products.
    std::vector<double> result(p.n + 1, 0.0);
    for (int s = 0; s <= p.n; ++s) {
        std::vector<double> poly{1.0};
        auto multiply = [&poly](double c0, double c1) {
            std::vector<double> out(poly.size() + 1, 0.0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                out[i] += c0 * poly[i];
                out[i + 1] += c1 * poly[i];
            }
            poly = std::move(out);
        };
        for (int i = 0; i < s; ++i) multiply(-0.5, 0.5);
        for (int i = 0; i < p.n - s; ++i) multiply(0.5, 0.5);
        const double c = binom(p.n + p.alpha, p.n - s) * binom(p.n + p.beta, s);
        for (std::size_t j = 0; j < poly.size(); ++j) result[j] += c * poly[j];
    }
    return result;
}

std::vector<cplx> polynomial_roots(std::span<const double> coeffs) {
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) throw DomainError("polynomial_roots: zero polynomial");
    std::size_t deg = coeffs.size() - 1;
    while (deg > 0 && std::abs(coeffs[deg]) <= 1e-13 * scale) --deg;
    if (deg == 0) return {};

    // Durand-Kerner on the monic polynomial.
    std::vector<cplx> monic(deg + 1);
    for (std::size_t j = 0; j <= deg; ++j) monic[j] = coeffs[j] / coeffs[deg];
    auto eval = [&](cplx z) {
        cplx acc = 0.0;
        for (std::size_t j = deg + 1; j-- > 0;) acc = acc * z + monic[j];
        return acc;
    };
    double radius = 0.0;
    for (std::size_t j = 0; j < deg; ++j) radius = std::max(radius, std::abs(monic[j]));
    radius = 1.0 + radius;

    std::vector<cplx> roots(deg);
    for (std::size_t i = 0; i < deg; ++i)
        roots[i] = std::polar(0.5 * radius, 2.0 * std::numbers::pi * (i + 0.25) / deg);

    for (int iter = 0; iter < 2000; ++iter) {
        double change = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            cplx den = 1.0;
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) den *= roots[i] - roots[j];
            if (den == cplx(0.0)) den = 1e-300;
            const cplx step = eval(roots[i]) / den;
            roots[i] -= step;
            change = std::max(change, std::abs(step) / (1.0 + std::abs(roots[i])));
        }
        if (change < 1e-15) break;
    }
    return roots;
}

}  // namespace potalg
