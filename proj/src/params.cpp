#include "potalg/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "potalg/algebra.hpp"
#include "potalg/errors.hpp"

namespace potalg {

std::string_view to_string(Family f) { return f == Family::GPT ? "gpt" : "scarf2"; }

std::optional<Family> parse_family(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "gpt") return Family::GPT;
    if (lower == "scarf2" || lower == "scarfii") return Family::ScarfII;
    return std::nullopt;
}

int ladder_n_max(double k) {
    const double a = k - 0.5;
    if (!(a > 0.0)) return -1;
    return static_cast<int>(std::ceil(a)) - 1;
}

double continuum_threshold(double k) { return (k - 0.5) * (k - 0.5); }

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Location of a zero of the U denominators on the family's domain, if any.
// GPT evaluates at z = cosh x (z >= 1), ScarfII at z = i sinh x (imaginary axis).
std::optional<double> denominator_zero(Family family, double B, unsigned m, double a) {
    for (const JacobiParams& d : u_denominators(B, m, a)) {
        const auto coeffs = jacobi_coefficients(d);
        double scale = 0.0;
        for (double c : coeffs) scale = std::max(scale, std::abs(c));
        if (scale == 0.0) return 0.0;
        for (const cplx r : polynomial_roots(coeffs)) {
            const double tol = 1e-9 * (1.0 + std::abs(r));
            if (family == Family::GPT) {
                if (std::abs(r.imag()) <= tol && r.real() >= 1.0 - 1e-12)
                    return std::acosh(std::max(1.0, r.real()));
            } else if (std::abs(r.real()) <= tol) {
                return std::asinh(r.imag());
            }
        }
    }
    return std::nullopt;
}

}  // namespace

ValidationReport validate_params(const PotentialParams& p) {
    ValidationReport rep;
    auto& v = rep.violations;
    if (!std::isfinite(p.B) || !std::isfinite(p.k)) {
        v.push_back("B and k must be finite");
    } else if (p.family == Family::GPT) {
        if (!(p.B > p.k + 0.5)) v.push_back("B > k+1/2 fails (" + fmt(p.B) + " <= " + fmt(p.k + 0.5) + ")");
        if (!(p.k + 0.5 > 1.0)) v.push_back("k+1/2 > 1 fails (k = " + fmt(p.k) + ")");
    } else {
        if (!(p.B > 0.0)) v.push_back("B > 0 fails (B = " + fmt(p.B) + ")");
        if (!(p.k > 0.5)) v.push_back("k > 1/2 fails (k = " + fmt(p.k) + ")");
    }

    if (v.empty() && p.m >= 1) {
        if (auto x0 = denominator_zero(p.family, p.B, p.m, p.a()))
            v.push_back("U(x, k-1/2) denominator vanishes near x = " + fmt(*x0) +
                        "; extended potential is singular");
        if (auto x1 = denominator_zero(p.family, p.B, p.m, p.k + 0.5))
            rep.warnings.push_back("U(x, k+1/2) has a pole near x = " + fmt(*x1) +
                                   "; constraint residuals near it lose precision");
    }
    if (p.family == Family::ScarfII)
        rep.warnings.push_back(
            "ScarfII ladder uses n < k-1/2; eigenvalues outside the ladder are reported as extra states");

    rep.valid = v.empty();
    if (std::isfinite(p.k)) {
        rep.n_max = ladder_n_max(p.k);
        rep.threshold = continuum_threshold(p.k);
    }
    return rep;
}

void require_valid(const PotentialParams& p) {
    const ValidationReport rep = validate_params(p);
    if (!rep.valid) throw ParameterError("invalid parameters: " + rep.violations.front());
}

}  // namespace potalg
