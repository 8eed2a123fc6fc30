#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "potalg/params.hpp"
#include "potalg/specialfun.hpp"

namespace potalg {

/// Uniform grid x_i = x_min + i h, i = 0..n_points-1, h = (x_max - x_min)/(n_points - 1).
/// All n_points are unknowns; psi = 0 is imposed one step outside each end.
struct GridSpec {
    double x_min = 0.01;
    double x_max = 25.0;
    std::size_t n_points = 1000;

    double h() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
    double x(std::size_t i) const { return x_min + static_cast<double>(i) * h(); }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Default Dirichlet truncation: GPT [0.01, 25], ScarfII [-15, 15].
GridSpec default_grid(Family family, std::size_t n_points = 1000);

/// Throws UsageError for n_points < 16 or x_min >= x_max, and DomainError for
/// a GPT grid reaching x < 1e-8.
void validate_grid(const GridSpec& g, Family family);

/// -d^2/dx^2 + V on a grid: diagonal 2/h^2 + V(x_i), constant off-diagonal.
struct TridiagonalOperator {
    std::vector<cplx> diagonal;
    double off_diagonal = 0.0;
    double h = 1.0;

    std::size_t size() const { return diagonal.size(); }
};

TridiagonalOperator discretize(const PotentialParams& p, const GridSpec& g);

/// Discretizes an arbitrary potential (used for partner potentials).
TridiagonalOperator discretize(const std::function<cplx(double)>& potential, const GridSpec& g);

/// All eigenvalues (ascending) of a real-symmetric tridiagonal matrix by
/// implicit-shift QL. Throws UsageError if any diagonal entry has a nonzero
/// imaginary part (use eigen_complex_tridiagonal instead).
std::vector<double> eigen_real_tridiagonal(const TridiagonalOperator& op);
std::vector<double> eigen_real_tridiagonal(std::span<const double> diagonal, std::span<const double> off);

/// All eigenvalues of a complex-symmetric tridiagonal matrix, sorted by real
/// then imaginary part.
///
/// Runs an implicit QL iteration with complex-orthogonal rotations, which keeps
/// the tridiagonal form. If a rotation degenerates (f^2 + g^2 ~ 0) or a block
/// exceeds the iteration cap, that block is handed to eigen_hessenberg.
std::vector<cplx> eigen_complex_tridiagonal(const TridiagonalOperator& op);
std::vector<cplx> eigen_complex_tridiagonal(std::span<const cplx> diagonal, std::span<const cplx> off);

/// Eigenvalues of a dense upper-Hessenberg matrix (row-major, n x n) by
/// unitary single-shift QR with Wilkinson shifts and deflation.
/// Throws NumericalFailure with the active block's upper index when an
/// eigenvalue takes more than 30 iterations.
std::vector<cplx> eigen_hessenberg(std::vector<cplx> h, std::size_t n);

/// One rung of the algebraic ladder matched against the numerical spectrum.
struct LadderLevel {
    int n = 0;
    double closed_form = 0.0;
    cplx numeric;
    double refinement_error = 0.0;
    bool found = false;
};

/// Numerical bound spectrum for one parameter set.
struct Spectrum {
    /// Every eigenvalue of the finest solve, sorted by real part.
    std::vector<cplx> energies;
    /// Retained bound states: Re E below threshold - margin and |Im E| < reality_tol.
    std::vector<cplx> bound_values;
    /// Real parts of bound_values, ascending.
    std::vector<double> bound_energies;
    /// Per bound state |E(2N) - E(N)| from the two finest levels (0 for a single solve).
    std::vector<double> refinement_error;
    double threshold = 0.0;
    double reality_tol = 1e-6;
    /// Ladder n = 0..n_max matched against bound_values.
    std::vector<LadderLevel> ladder;
    /// Bound states not matched to a ladder rung.
    std::vector<cplx> extra_states;
    /// Sub-threshold eigenvalues with |Im E| >= reality_tol.
    std::vector<cplx> pt_violations;
    /// Per refinement level, the bound states found at that level.
    std::vector<std::vector<cplx>> level_values;
    std::vector<std::string> warnings;
    PotentialParams params;
    GridSpec grid;

    bool ladder_complete() const;
    /// Number of bound states agrees with n_max + 1.
    bool count_matches_ladder() const;
};

/// Splits eigs into bound states, PT violations and the ladder match.
/// `margin` excludes states within that distance below the threshold.
Spectrum bound_states_from_spectrum(std::span<const cplx> eigs, const PotentialParams& p,
                                    double reality_tol = 1e-6, double margin = 0.0);

/// Solves at N, 2N, 4N, ... (levels solves), Richardson-extrapolates each bound
/// state from the two finest levels assuming O(h^2) error, and drops states
/// within 10x their refinement error of the threshold. Throws ConvergenceError
/// if the bound-state count changes between levels. With `concurrent` the
/// levels are solved on separate threads.
Spectrum converge_spectrum(const PotentialParams& p, const GridSpec& base, int levels,
                           double reality_tol = 1e-6, bool concurrent = true);

/// log2(|E_0 - E_1| / |E_1 - E_2|) for bound state `state` over the three
/// finest levels of s.
double convergence_order(const Spectrum& s, std::size_t state = 0);

/// Largest |V(x_edge) - threshold| over the two grid ends.
double tail_mismatch(const PotentialParams& p, const GridSpec& g);

}  // namespace potalg
