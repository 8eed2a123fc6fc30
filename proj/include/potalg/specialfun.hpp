#pragma once

#include <complex>
#include <span>
#include <vector>

namespace potalg {

using cplx = std::complex<double>;

/// Degree and upper indices of a Jacobi polynomial P_n^(alpha,beta).
/// Negative and non-integer alpha, beta are allowed.
struct JacobiParams {
    int n = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// P_n^(alpha,beta)(z) in the standard normalization P_n(1) = binom(n+alpha, n).
///
/// Evaluated by the three-term recurrence in degree. When a recurrence
/// denominator 2k(k+alpha+beta)(2k+alpha+beta-2) vanishes (or nearly so) the
/// explicit finite-sum representation is used instead.
/// Throws DomainError on negative n or non-finite inputs.
cplx jacobi_poly(const JacobiParams& p, cplx z);

/// d/dz P_n^(alpha,beta)(z) = (n+alpha+beta+1)/2 * P_{n-1}^(alpha+1,beta+1)(z).
cplx jacobi_poly_derivative(const JacobiParams& p, cplx z);

/// P_n(z) / z^n, evaluated without forming z^n. Stable for very large |z|;
/// z must be nonzero.
cplx jacobi_poly_scaled(const JacobiParams& p, cplx z);

/// P_n'(z) / z^(n-1) (zero for n = 0). z must be nonzero.
cplx jacobi_poly_derivative_scaled(const JacobiParams& p, cplx z);

/// P_n via the explicit finite sum
///   sum_s binom(n+alpha, n-s) binom(n+beta, s) ((z-1)/2)^s ((z+1)/2)^(n-s).
/// Exposed for the degenerate-recurrence path and for cross-checks.
cplx jacobi_poly_explicit(const JacobiParams& p, cplx z);

/// Monomial coefficients c_0..c_n with P_n(z) = sum_j c_j z^j.
std::vector<double> jacobi_coefficients(const JacobiParams& p);

/// All complex roots of sum_j c_j z^j (coefficients in ascending order).
/// Leading coefficients that are zero relative to the largest one are trimmed
/// first, so the result may have fewer than coeffs.size()-1 entries.
/// Throws DomainError if every coefficient is zero.
std::vector<cplx> polynomial_roots(std::span<const double> coeffs);

}  // namespace potalg
