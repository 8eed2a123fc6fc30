#include "potalg/potentials.hpp"

#include <algorithm>
#include <cmath>

#include "hyperbolic.hpp"
#include "potalg/errors.hpp"

namespace potalg {

using detail::coth;
using detail::csch;
using detail::sech;

namespace {
constexpr cplx I{0.0, 1.0};
}

cplx potential_conventional(const PotentialParams& p, double x) {
    require_in_domain(p.family, x);
    const double a = p.a();
    const double B = p.B;
    if (p.family == Family::GPT) {
        const double cs = csch(x);
        return a * a + (B * B + a * (a + 1.0)) * cs * cs - B * (2.0 * a + 1.0) * cs * coth(x);
    }
    const double se = sech(x);
    const cplx iB = I * B;
    return a * a + (iB * iB - a * (a + 1.0)) * se * se + iB * (2.0 * a + 1.0) * se * std::tanh(x);
}

namespace {

cplx rational_closed_form(const PotentialParams& p, double x) {
    const double k = p.k;
    const double B = p.B;
    if (p.family == Family::GPT) {
        // d = 2B cosh x - 2k; written via sech so that large x decays to 0.
        const double s = sech(x);
        const double q = 2.0 * B - 2.0 * k * s;  // d * sech x
        if (q == 0.0) throw SingularityError("potential_rational: vanishing denominator");
        const double inv_d = s / q;
        return 4.0 * k * inv_d - 2.0 * (4.0 * B * B - 4.0 * k * k) * inv_d * inv_d;
    }
    const cplx iB = I * B;
    const double s = sech(x);
    const cplx q = -2.0 * iB * std::tanh(x) + 2.0 * k * s;  // d * sech x
    if (q == cplx(0.0)) throw SingularityError("potential_rational: vanishing denominator");
    const cplx inv_d = s / q;
    return -4.0 * k * inv_d + 2.0 * (4.0 * iB * iB + 4.0 * k * k) * inv_d * inv_d;
}

}  // namespace

cplx potential_rational(const PotentialParams& p, double x) {
    require_in_domain(p.family, x);
    if (p.m == 0) return 0.0;
    if (p.m == 1) return rational_closed_form(p, x);
    return casimir_potential(p, x) - potential_conventional(p, x);
}

PotentialEvaluation evaluate_potential(const PotentialParams& p, const AlgebraFunctions& af, double x) {
    PotentialEvaluation ev;
    ev.x = x;
    ev.params = p;
    ev.v_conventional = potential_conventional(p, x);
    ev.v_casimir = casimir_potential(af, p.k, x);
    if (p.m == 0)
        ev.v_rational = 0.0;
    else if (p.m == 1)
        ev.v_rational = rational_closed_form(p, x);
    else
        ev.v_rational = ev.v_casimir - ev.v_conventional;
    ev.v_total = ev.v_conventional + ev.v_rational;
    return ev;
}

PotentialEvaluation evaluate_potential(const PotentialParams& p, double x) {
    return evaluate_potential(p, make_algebra_functions(p), x);
}

double mixed_gap(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace potalg
