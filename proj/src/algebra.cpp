#include "potalg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperbolic.hpp"
#include "potalg/errors.hpp"

namespace potalg {

using detail::coth;
using detail::csch;
using detail::sech;

namespace {

constexpr cplx I{0.0, 1.0};

// Switch to P_n(z)/z^n evaluation once |z| exceeds this.
constexpr double kScaledThreshold = 2.0;

void require_nonzero(cplx d, const char* where) {
    if (d == cplx(0.0)) throw SingularityError(std::string(where) + ": vanishing denominator");
}

// Jacobi indices of the numerators paired with u_denominators().
std::array<JacobiParams, 2> u_numerators(double B, unsigned m, double a) {
    const int n = static_cast<int>(m) - 1;
    return {JacobiParams{n, -B + a + 0.5, -B - a - 0.5}, JacobiParams{n, -B + a - 0.5, -B - a + 0.5}};
}

}  // namespace

std::array<JacobiParams, 2> u_denominators(double B, unsigned m, double a) {
    const int n = static_cast<int>(m);
    return {JacobiParams{n, -B + a - 0.5, -B - a - 1.5}, JacobiParams{n, -B + a - 1.5, -B - a - 0.5}};
}

void require_in_domain(Family family, double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite x");
    if (family == Family::GPT && x < 1e-8)
        throw DomainError("GPT potential is defined for x > 0 (floor 1e-8), got x = " + std::to_string(x));
}

UValue u_two_term(Family family, double B, double a, double x) {
    const double t = std::tanh(x);
    const double s = sech(x);
    if (family == Family::GPT) {
        // 2B sinh/(2B cosh - c) rewritten as 2B tanh/(2B - c sech).
        auto term = [&](double c) {
            const double q = 2.0 * B - c * s;
            require_nonzero(q, "u_two_term");
            return UValue{2.0 * B * t / q, 2.0 * B * (1.0 / q - 2.0 * B * t * t / (q * q))};
        };
        const UValue lo = term(2.0 * a + 1.0);
        const UValue hi = term(2.0 * a - 1.0);
        return {lo.u - hi.u, lo.du - hi.du};
    }
    // 2iB cosh/(-2iB sinh + c) rewritten as 2iB/(-2iB tanh + c sech).
    auto term = [&](double c) {
        const cplx q = -2.0 * I * B * t + c * s;
        require_nonzero(q, "u_two_term");
        return UValue{2.0 * I * B / q, 2.0 * I * B * (t / q + 2.0 * I * B / (q * q))};
    };
    const UValue lo = term(2.0 * a - 1.0);
    const UValue hi = term(2.0 * a + 1.0);
    return {lo.u - hi.u, lo.du - hi.du};
}

UValue u_jacobi_ratio(Family family, double B, unsigned m, double a, double x) {
    if (m == 0) return {0.0, 0.0};
    // U = c z' R(z) with z = cosh x (GPT) or i sinh x (ScarfII); z'' = z in both.
    const double c = (static_cast<double>(m) - 2.0 * B - 1.0) / 2.0;
    const cplx z = family == Family::GPT ? cplx(std::cosh(x)) : I * std::sinh(x);
    // Past |x| = 350 the scaled polynomials equal their limits to machine precision.
    const double xs = std::clamp(x, -350.0, 350.0);
    const cplx z_scaled = family == Family::GPT ? cplx(std::cosh(xs)) : I * std::sinh(xs);
    const auto num = u_numerators(B, m, a);
    const auto den = u_denominators(B, m, a);

    if (std::abs(z) > kScaledThreshold) {
        // rho = z R, sigma = z^2 R', t = z'/z; all finite as |z| grows.
        cplx rho = 0.0;
        cplx sigma = 0.0;
        for (int i = 0; i < 2; ++i) {
            const cplx n = jacobi_poly_scaled(num[i], z_scaled);
            const cplx dn = jacobi_poly_derivative_scaled(num[i], z_scaled);
            const cplx d = jacobi_poly_scaled(den[i], z_scaled);
            const cplx dd = jacobi_poly_derivative_scaled(den[i], z_scaled);
            require_nonzero(d, "u_jacobi_ratio");
            const double sign = i == 0 ? 1.0 : -1.0;
            rho += sign * n / d;
            sigma += sign * (dn / d - n * dd / (d * d));
        }
        const cplx t = family == Family::GPT ? cplx(std::tanh(x)) : cplx(coth(x));
        return {c * t * rho, c * rho + c * t * t * sigma};
    }

    cplx r = 0.0;
    cplx dr = 0.0;
    for (int i = 0; i < 2; ++i) {
        const cplx n = jacobi_poly(num[i], z);
        const cplx dn = jacobi_poly_derivative(num[i], z);
        const cplx d = jacobi_poly(den[i], z);
        const cplx dd = jacobi_poly_derivative(den[i], z);
        require_nonzero(d, "u_jacobi_ratio");
        const double sign = i == 0 ? 1.0 : -1.0;
        r += sign * n / d;
        dr += sign * (dn * d - n * dd) / (d * d);
    }
    const cplx dz = family == Family::GPT ? cplx(std::sinh(x)) : I * std::cosh(x);
    return {c * dz * r, c * z * r + c * dz * dz * dr};
}

AlgebraFunctions make_algebra_functions(const PotentialParams& p, UForm form) {
    require_valid(p);
    AlgebraFunctions af;
    af.family = p.family;
    const double B = p.B;
    if (p.family == Family::GPT) {
        af.F = [](double x) { return cplx(coth(x)); };
        af.dF = [](double x) { return cplx(-csch(x) * csch(x)); };
        af.G = [B](double x) { return cplx(B * csch(x)); };
        af.dG = [B](double x) { return cplx(-B * csch(x) * coth(x)); };
    } else {
        af.F = [](double x) { return cplx(std::tanh(x)); };
        af.dF = [](double x) { return cplx(sech(x) * sech(x)); };
        af.G = [B](double x) { return -I * B * sech(x); };
        af.dG = [B](double x) { return I * B * sech(x) * std::tanh(x); };
    }

    if (form == UForm::Auto) form = p.m == 1 ? UForm::TwoTerm : UForm::JacobiRatio;
    if (p.m == 0) {
        af.U = [](double, double) { return cplx(0.0); };
        af.dU = [](double, double) { return cplx(0.0); };
        return af;
    }
    const Family fam = p.family;
    if (form == UForm::TwoTerm) {
        if (p.m != 1) throw UsageError("two-term form of U exists only for m = 1");
        af.U = [fam, B](double x, double a) { return u_two_term(fam, B, a, x).u; };
        af.dU = [fam, B](double x, double a) { return u_two_term(fam, B, a, x).du; };
    } else {
        const unsigned m = p.m;
        af.U = [fam, B, m](double x, double a) { return u_jacobi_ratio(fam, B, m, a, x).u; };
        af.dU = [fam, B, m](double x, double a) { return u_jacobi_ratio(fam, B, m, a, x).du; };
    }
    return af;
}

std::pair<MaxResidual, MaxResidual> rest1_residuals(const AlgebraFunctions& af,
                                                    std::span<const double> xs) {
    if (xs.empty()) throw UsageError("rest1_residuals: empty sample set");
    MaxResidual rf{-1.0, 0.0};
    MaxResidual rg{-1.0, 0.0};
    for (double x : xs) {
        require_in_domain(af.family, x);
        const cplx f = af.F(x);
        const double ef = std::abs(af.dF(x) + f * f - 1.0);
        const double eg = std::abs(af.dG(x) + f * af.G(x));
        if (ef > rf.value) rf = {ef, x};
        if (eg > rg.value) rg = {eg, x};
    }
    return {rf, rg};
}

MaxResidual rest2_residual(const AlgebraFunctions& af, double k, std::span<const double> xs) {
    if (xs.empty()) throw UsageError("rest2_residual: empty sample set");
    const double am = k - 0.5;
    const double ap = k + 0.5;
    MaxResidual r{-1.0, 0.0};
    for (double x : xs) {
        require_in_domain(af.family, x);
        const cplx f = af.F(x);
        const cplx g = af.G(x);
        const cplx um = af.U(x, am);
        const cplx up = af.U(x, ap);
        const cplx lhs = um * um - af.dU(x, am) + 2.0 * um * (f * am - g);
        const cplx rhs = up * up + af.dU(x, ap) + 2.0 * up * (f * ap - g);
        const double e = std::abs(lhs - rhs);
        if (e > r.value) r = {e, x};
    }
    return r;
}

cplx casimir_potential(const AlgebraFunctions& af, double k, double x) {
    require_in_domain(af.family, x);
    const double a = k - 0.5;
    const cplx f = af.F(x);
    const cplx g = af.G(x);
    const cplx u = af.U(x, a);
    return (f * f - 1.0) * (k * k - 0.25) + 2.0 * k * af.dG(x) + g * g + a * a + u * u +
           2.0 * (a * f - g) * u - af.dU(x, a);
}

cplx casimir_potential(const PotentialParams& p, double x) {
    return casimir_potential(make_algebra_functions(p), p.k, x);
}

double energy_closed_form(double k, int n) {
    const int n_max = ladder_n_max(k);
    if (n < 0 || n > n_max)
        throw RangeError("level n = " + std::to_string(n) + " outside bound ladder 0.." +
                             std::to_string(n_max) + " for k = " + std::to_string(k),
                         n_max);
    const double a = k - 0.5;
    const double d = n - a;
    return a * a - d * d;
}

std::vector<BoundState> bound_state_labels(const PotentialParams& p) {
    require_valid(p);
    std::vector<BoundState> out;
    for (int n = 0; n <= ladder_n_max(p.k); ++n)
        out.push_back({n, n - p.k, p.k, energy_closed_form(p.k, n)});
    return out;
}

std::pair<double, double> default_sample_domain(Family family) {
    return family == Family::GPT ? std::pair{1e-2, 25.0} : std::pair{-15.0, 15.0};
}

std::vector<double> default_samples(Family family, std::size_t count) {
    const auto [lo, hi] = default_sample_domain(family);
    std::vector<double> xs(count);
    if (count == 1) {
        xs[0] = lo;
        return xs;
    }
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        xs[i] = family == Family::GPT ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                                      : lo + t * (hi - lo);
    }
    return xs;
}

}  // namespace potalg
