#pragma once

#include <optional>
#include <span>
#include <utility>

#include "potalg/algebra.hpp"
#include "potalg/params.hpp"

namespace potalg {

/// Measured constraint residuals for one parameter set.
struct ResidualReport {
    MaxResidual rest1_F;
    MaxResidual rest1_G;
    MaxResidual rest2;
    /// max over samples of |V_casimir - (V_conventional + V_rational)| / max(1, |V_closed|).
    MaxResidual casimir_vs_closed;
    std::size_t sample_count = 0;
    std::pair<double, double> sample_domain{0.0, 0.0};
};

/// Evaluates all algebra residuals over xs. `override_functions` replaces the
/// family's F, G, U (used for fault injection); the closed-form channel always
/// uses the family's own definitions.
ResidualReport build_residual_report(const PotentialParams& p, std::span<const double> xs,
                                     const std::optional<AlgebraFunctions>& override_functions = std::nullopt);

/// F replaced by tanh(2x): violates F' + F^2 = 1 everywhere except x = 0.
AlgebraFunctions inject_fault_tanh2x(AlgebraFunctions af);

}  // namespace potalg
