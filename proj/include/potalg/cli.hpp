#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "potalg/params.hpp"
#include "potalg/spectral.hpp"

namespace potalg::cli {

enum class Command { Potential, Spectrum, VerifyAlgebra, VerifySusy, Sweep };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Command c);

/// Exit statuses of the potalg tool.
enum ExitStatus : int {
    kExitPass = 0,
    kExitToleranceFailure = 1,
    kExitUsage = 2,
    kExitNonConvergence = 3,
};

/// Inclusive arithmetic range lo, lo+step, ..., <= hi. Empty when lo > hi.
struct Range {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;

    std::vector<double> values() const;
};

/// Parses "lo:hi:step" (or "lo:hi", step 1, or a single value).
Range parse_range(const std::string& text);

struct Tolerances {
    double rest = 1e-9;         ///< rest1 and rest2 residuals
    double si = 1e-8;           ///< shape-invariance spread and remainder
    double gap = 1e-9;          ///< Casimir vs closed-form gap
    double isospectral = 5e-5;  ///< sweep deviation from m = 0
    double reality = 1e-6;      ///< |Im E| accepted as real
};

struct RunConfig {
    Command command = Command::Spectrum;
    PotentialParams params;
    GridSpec grid;
    /// True when --x-min/--x-max were given; otherwise grid is the family default.
    bool grid_explicit = false;
    int levels = 3;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> output_path;
    Tolerances tol;
    std::optional<Range> B_range;
    std::optional<Range> k_range;
    std::optional<Range> m_range;
    /// Shifted index for verify-susy (defaults to k - 1/2).
    std::optional<double> si_index;
    /// Named fault injected into F for verify-algebra ("tanh2x").
    std::optional<std::string> fault;
};

/// Maximum number of (B, k, m) tuples a sweep accepts.
inline constexpr std::size_t kSweepCap = 10000;

using Value = std::variant<std::monostate, double, std::complex<double>, std::int64_t, std::string>;

enum class ColumnKind { Real, Complex, Integer, Text };

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Real;
};

/// Output of one command: a table plus exit status and stderr diagnostics.
struct Result {
    std::vector<Column> columns;
    std::vector<std::vector<Value>> rows;
    int exit_code = kExitPass;
    std::vector<std::string> warnings;
};

Result run_potential(const RunConfig& cfg);
Result run_spectrum(const RunConfig& cfg);
Result run_verify_algebra(const RunConfig& cfg);
Result run_verify_susy(const RunConfig& cfg);
Result run_sweep(const RunConfig& cfg);
Result run(const RunConfig& cfg);

/// Formats a double with 17 significant digits.
std::string format_number(double v);

void write_csv(std::ostream& os, const Result& r, const RunConfig& cfg);
void write_json(std::ostream& os, const Result& r, const RunConfig& cfg);
std::string render(const Result& r, const RunConfig& cfg);

/// Writes `content` to `path` via a temporary file and rename.
void write_atomically(const std::string& path, const std::string& content);

/// Widens the domain (keeping h) until |V(edge) - threshold| < 1e-8, at most
/// eight times. Returns the grid used; appends a warning when it changed.
GridSpec widen_for_tail(const PotentialParams& p, GridSpec g, std::vector<std::string>& warnings);

/// Full command-line entry point. Returns the process exit status.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace potalg::cli
