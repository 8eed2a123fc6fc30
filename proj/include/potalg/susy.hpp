#pragma once

#include <span>
#include <string>
#include <utility>

#include "potalg/algebra.hpp"
#include "potalg/params.hpp"

namespace potalg {

/// W(x, a) = a F(x) - G(x) + U(x, a), split into its conventional and U parts.
struct SuperpotentialEval {
    double a = 0.0;
    double x = 0.0;
    cplx w1;  ///< a F - G
    cplx w2;  ///< U(x, a)
    cplx w;   ///< w1 + w2
    cplx w_prime;
};

SuperpotentialEval superpotential(const PotentialParams& p, double a, double x);
SuperpotentialEval superpotential(const AlgebraFunctions& af, double a, double x);

/// (W^2 + W', W^2 - W').
std::pair<cplx, cplx> partner_pair(const SuperpotentialEval& w);
std::pair<cplx, cplx> partner_pair(const PotentialParams& p, double a, double x);

/// Which difference was constant in x.
enum class SignConvention {
    MinusPlus,  ///< D = [W^2 - W'](a) - [W^2 + W'](a+1)
    PlusMinus,  ///< D = [W^2 + W'](a) - [W^2 - W'](a+1)
};

std::string_view to_string(SignConvention c);

struct ShapeInvarianceReport {
    double a = 0.0;
    /// -Re mean(D) for the selected convention; equals R = 2a+1 when the pair closes.
    double r_mean = 0.0;
    /// sqrt(mean |D - mean D|^2) for the selected convention.
    double r_stddev = 0.0;
    /// |Im mean(D)|.
    double r_imag = 0.0;
    double r_expected = 0.0;
    SignConvention sign_convention = SignConvention::MinusPlus;
    /// Relative spread r_stddev / |mean D| of the other convention.
    double rejected_relative_stddev = 0.0;
    /// False when neither convention gives stddev <= 1e-6 |mean|.
    bool shape_invariant = false;
};

/// Evaluates D(x) under both conventions, keeps the one with smaller spread.
/// Requires both k = a + 1/2 and k + 1 = a + 3/2 to be valid parameters.
ShapeInvarianceReport shape_invariance_residual(const PotentialParams& p, double a, std::span<const double> grid);

/// sum_{s=1..n} R(a - s) with a = k - 1/2 and R(a) = 2a + 1. Throws RangeError
/// outside 0 <= n < k - 1/2.
double energy_from_remainders(double k, int n);

}  // namespace potalg
