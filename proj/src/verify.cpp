#include "potalg/verify.hpp"

#include <algorithm>
#include <cmath>

#include "potalg/errors.hpp"
#include "potalg/potentials.hpp"

namespace potalg {

ResidualReport build_residual_report(const PotentialParams& p, std::span<const double> xs,
                                     const std::optional<AlgebraFunctions>& override_functions) {
    if (xs.empty()) throw UsageError("build_residual_report: empty sample set");
    const AlgebraFunctions own = make_algebra_functions(p);
    const AlgebraFunctions& af = override_functions ? *override_functions : own;

    ResidualReport rep;
    std::tie(rep.rest1_F, rep.rest1_G) = rest1_residuals(af, xs);
    rep.rest2 = rest2_residual(af, p.k, xs);
    rep.casimir_vs_closed = {-1.0, 0.0};
    for (double x : xs) {
        const PotentialEvaluation ev = evaluate_potential(p, own, x);
        const double gap = mixed_gap(casimir_potential(af, p.k, x), ev.v_conventional + ev.v_rational);
        if (gap > rep.casimir_vs_closed.value) rep.casimir_vs_closed = {gap, x};
    }
    rep.sample_count = xs.size();
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    rep.sample_domain = {*lo, *hi};
    return rep;
}

AlgebraFunctions inject_fault_tanh2x(AlgebraFunctions af) {
    af.F = [](double x) { return cplx(std::tanh(2.0 * x)); };
    af.dF = [](double x) {
        const double s = 1.0 / std::cosh(2.0 * x);
        return cplx(2.0 * s * s);
    };
    return af;
}

}  // namespace potalg
