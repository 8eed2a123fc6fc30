#pragma once

#include "potalg/algebra.hpp"
#include "potalg/params.hpp"
#include "potalg/specialfun.hpp"

namespace potalg {

/// Conventional (m = 0) potential in closed form.
///   GPT:     a^2 + [B^2 + a(a+1)] csch^2 x - B(2a+1) csch x coth x
///   ScarfII: a^2 + [(iB)^2 - a(a+1)] sech^2 x + iB(2a+1) sech x tanh x
/// with a = k - 1/2. Throws DomainError for GPT x < 1e-8.
cplx potential_conventional(const PotentialParams& p, double x);

/// Rational part of the extended potential. Zero for m = 0, closed form for
/// m = 1, and casimir_potential - potential_conventional for m >= 2.
cplx potential_rational(const PotentialParams& p, double x);

/// Every channel of the potential at one point.
struct PotentialEvaluation {
    double x = 0.0;
    cplx v_conventional;
    cplx v_rational;
    cplx v_total;   ///< v_conventional + v_rational
    cplx v_casimir; ///< independent assembly from F, G, U
    PotentialParams params;

    Family family() const { return params.family; }
};

PotentialEvaluation evaluate_potential(const PotentialParams& p, double x);

/// Evaluates all channels while reusing one AlgebraFunctions instance.
PotentialEvaluation evaluate_potential(const PotentialParams& p, const AlgebraFunctions& af, double x);

/// |a - b| / max(1, |b|): relative where |b| > 1, absolute otherwise.
double mixed_gap(cplx a, cplx b);

}  // namespace potalg
