#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace potalg {

/// Potential family. GPT lives on the half line x > 0, ScarfII on the full line.
enum class Family { GPT, ScarfII };

std::string_view to_string(Family f);
/// Accepts "gpt" and "scarf2" (case-insensitive). Returns nullopt otherwise.
std::optional<Family> parse_family(std::string_view s);

/// Family tag, strength B, J3 eigenvalue k and extension index m (m = 0 is
/// the conventional potential).
struct PotentialParams {
    Family family = Family::GPT;
    double B = 5.0;
    double k = 3.5;
    unsigned m = 1;

    /// Shifted index k - 1/2 that plays the role of the superpotential strength.
    double a() const { return k - 0.5; }

    friend bool operator==(const PotentialParams&, const PotentialParams&) = default;
};

/// Largest integer n with n < k - 1/2, or -1 when there is none.
int ladder_n_max(double k);

/// Continuum threshold (k - 1/2)^2.
double continuum_threshold(double k);

struct ValidationReport {
    bool valid = false;
    /// One entry per violated constraint, naming it.
    std::vector<std::string> violations;
    /// Non-fatal findings (e.g. poles of U at the upper shifted index).
    std::vector<std::string> warnings;
    int n_max = -1;
    double threshold = 0.0;
};

/// Checks the family constraints (GPT: B > k+1/2 > 1; ScarfII: B > 0, k > 1/2)
/// and, for m >= 1, that the Jacobi denominators of U(x, k-1/2) have no zero
/// on the family's domain.
ValidationReport validate_params(const PotentialParams& p);

/// Throws ParameterError naming the first violated constraint.
void require_valid(const PotentialParams& p);

}  // namespace potalg
