#pragma once

// Reciprocal hyperbolic functions that decay to 0 instead of producing
// inf/inf once cosh and sinh overflow (|x| > ~710).

#include <cmath>

namespace potalg::detail {

inline double sech(double x) { return 1.0 / std::cosh(x); }
inline double csch(double x) { return 1.0 / std::sinh(x); }
inline double coth(double x) { return 1.0 / std::tanh(x); }

}  // namespace potalg::detail
