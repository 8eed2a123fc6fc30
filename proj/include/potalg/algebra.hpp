#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "potalg/params.hpp"
#include "potalg/specialfun.hpp"

namespace potalg {

/// Which expression backs U(x, a).
enum class UForm {
    Auto,         ///< zero for m = 0, two-term rational form for m = 1, Jacobi ratio for m >= 2
    TwoTerm,      ///< explicit X1 rational form (m = 1 only)
    JacobiRatio,  ///< ratio of Jacobi polynomials, any m >= 1
};

/// U(x, a) together with its analytic x-derivative.
struct UValue {
    cplx u;
    cplx du;
};

/// F, G and U of the modified generators, each with an analytic x-derivative.
/// U and dU take (x, a) where a is the shifted index k -/+ 1/2.
///
/// GPT:     F = coth x, G = B csch x.
/// ScarfII: F = tanh x, G = -i B sech x.
struct AlgebraFunctions {
    Family family = Family::GPT;
    std::function<cplx(double)> F;
    std::function<cplx(double)> dF;
    std::function<cplx(double)> G;
    std::function<cplx(double)> dG;
    std::function<cplx(double, double)> U;
    std::function<cplx(double, double)> dU;
};

AlgebraFunctions make_algebra_functions(const PotentialParams& p, UForm form = UForm::Auto);

/// Explicit X1 form of U.
UValue u_two_term(Family family, double B, double a, double x);

/// Jacobi-ratio form of U for extension index m >= 1.
UValue u_jacobi_ratio(Family family, double B, unsigned m, double a, double x);

/// Jacobi indices of the two denominators P_m appearing in U(x, a).
std::array<JacobiParams, 2> u_denominators(double B, unsigned m, double a);

/// Maximum residual of one constraint and the sample where it occurs.
struct MaxResidual {
    double value = 0.0;
    double at = 0.0;
};

/// max|F' + F^2 - 1| and max|G' + F G| over xs.
std::pair<MaxResidual, MaxResidual> rest1_residuals(const AlgebraFunctions& af,
                                                    std::span<const double> xs);

/// max over xs of |[U^2 - U' + 2U(F(k-1/2) - G)]_{k-1/2} - [U^2 + U' + 2U(F(k+1/2) - G)]_{k+1/2}|.
MaxResidual rest2_residual(const AlgebraFunctions& af, double k, std::span<const double> xs);

/// V_k(x) assembled from F, G, U:
///   (F^2-1)(k^2-1/4) + 2k G' + G^2 + (k-1/2)^2 + U^2 + 2((k-1/2)F - G)U - U'
/// with U evaluated at k - 1/2.
cplx casimir_potential(const AlgebraFunctions& af, double k, double x);
cplx casimir_potential(const PotentialParams& p, double x);

/// E_n = (k-1/2)^2 - (n-(k-1/2))^2. Throws RangeError unless 0 <= n < k-1/2.
double energy_closed_form(double k, int n);

/// Algebra labels of one bound level: k = -j + n, so j = n - k.
struct BoundState {
    int n = 0;
    double j = 0.0;
    double k = 0.0;
    double energy = 0.0;
};

/// The full finite ladder n = 0..n_max. Independent of m.
std::vector<BoundState> bound_state_labels(const PotentialParams& p);

/// Throws DomainError if x is outside the family's domain (GPT: x >= 1e-8).
void require_in_domain(Family family, double x);

/// Default residual sample domain: GPT [1e-2, 25], ScarfII [-15, 15].
std::pair<double, double> default_sample_domain(Family family);

/// `count` points on the default domain: log-spaced for GPT, linear for ScarfII.
std::vector<double> default_samples(Family family, std::size_t count = 200);

}  // namespace potalg
