#include "potalg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "potalg/algebra.hpp"
#include "potalg/errors.hpp"
#include "potalg/potentials.hpp"

namespace potalg {

GridSpec default_grid(Family family, std::size_t n_points) {
    return family == Family::GPT ? GridSpec{0.01, 25.0, n_points} : GridSpec{-15.0, 15.0, n_points};
}

void validate_grid(const GridSpec& g, Family family) {
    if (g.n_points < 16) throw UsageError("grid needs at least 16 points");
    if (!std::isfinite(g.x_min) || !std::isfinite(g.x_max) || !(g.x_min < g.x_max))
        throw UsageError("grid requires finite x_min < x_max");
    if (family == Family::GPT && g.x_min < 1e-8)
        throw DomainError("GPT grid must stay clear of the x = 0 singularity (x_min >= 1e-8)");
}

TridiagonalOperator discretize(const std::function<cplx(double)>& potential, const GridSpec& g) {
    if (g.n_points < 16) throw UsageError("grid needs at least 16 points");
    if (!(g.x_min < g.x_max)) throw UsageError("grid requires x_min < x_max");
    TridiagonalOperator op;
    op.h = g.h();
    const double inv_h2 = 1.0 / (op.h * op.h);
    op.off_diagonal = -inv_h2;
    op.diagonal.resize(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) op.diagonal[i] = 2.0 * inv_h2 + potential(g.x(i));
    return op;
}

TridiagonalOperator discretize(const PotentialParams& p, const GridSpec& g) {
    validate_grid(g, p.family);
    const AlgebraFunctions af = make_algebra_functions(p);
    return discretize([&](double x) { return evaluate_potential(p, af, x).v_total; }, g);
}

namespace {

std::vector<cplx> solve_all(const TridiagonalOperator& op, Family family) {
    if (family == Family::GPT) {
        const std::vector<double> ev = eigen_real_tridiagonal(op);
        return {ev.begin(), ev.end()};
    }
    return eigen_complex_tridiagonal(op);
}

// Ladder matching and bookkeeping on an already-filtered bound list.
Spectrum assemble(std::vector<cplx> bound, std::vector<double> errors, const PotentialParams& p,
                  double reality_tol) {
    Spectrum s;
    s.params = p;
    s.threshold = continuum_threshold(p.k);
    s.reality_tol = reality_tol;

    std::vector<std::size_t> order(bound.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return bound[a].real() < bound[b].real(); });
    for (std::size_t i : order) {
        s.bound_values.push_back(bound[i]);
        s.bound_energies.push_back(bound[i].real());
        s.refinement_error.push_back(errors[i]);
    }

    const int n_max = ladder_n_max(p.k);
    std::vector<bool> taken(s.bound_values.size(), false);
    for (int n = 0; n <= n_max; ++n) {
        LadderLevel lv;
        lv.n = n;
        lv.closed_form = energy_closed_form(p.k, n);
        double window = 0.5;
        if (n > 0) window = std::min(window, 0.5 * (lv.closed_form - energy_closed_form(p.k, n - 1)));
        if (n < n_max) window = std::min(window, 0.5 * (energy_closed_form(p.k, n + 1) - lv.closed_form));
        std::size_t best = s.bound_values.size();
        double best_dist = window;
        for (std::size_t i = 0; i < s.bound_values.size(); ++i) {
            const double dist = std::abs(s.bound_values[i].real() - lv.closed_form);
            if (!taken[i] && dist <= best_dist) {
                best = i;
                best_dist = dist;
            }
        }
        if (best < s.bound_values.size()) {
            taken[best] = true;
            lv.found = true;
            lv.numeric = s.bound_values[best];
            lv.refinement_error = s.refinement_error[best];
        } else {
            s.warnings.push_back("no numerical eigenvalue near ladder level n = " + std::to_string(n));
        }
        s.ladder.push_back(lv);
    }
    for (std::size_t i = 0; i < s.bound_values.size(); ++i)
        if (!taken[i]) s.extra_states.push_back(s.bound_values[i]);
    if (!s.count_matches_ladder()) {
        std::ostringstream os;
        os << "bound-state count " << s.bound_values.size() << " differs from ladder size " << n_max + 1;
        s.warnings.push_back(os.str());
    }
    return s;
}

void split(std::span<const cplx> eigs, double threshold, double reality_tol, double margin,
           std::vector<cplx>& bound, std::vector<cplx>& violations) {
    for (const cplx& e : eigs) {
        if (!(e.real() < threshold - margin)) continue;
        if (std::abs(e.imag()) < reality_tol)
            bound.push_back(e);
        else
            violations.push_back(e);
    }
}

}  // namespace

bool Spectrum::ladder_complete() const {
    return std::all_of(ladder.begin(), ladder.end(), [](const LadderLevel& l) { return l.found; });
}

bool Spectrum::count_matches_ladder() const {
    return static_cast<int>(bound_values.size()) == ladder_n_max(params.k) + 1;
}

Spectrum bound_states_from_spectrum(std::span<const cplx> eigs, const PotentialParams& p, double reality_tol,
                                    double margin) {
    std::vector<cplx> bound, violations;
    split(eigs, continuum_threshold(p.k), reality_tol, margin, bound, violations);
    const std::size_t count = bound.size();
    Spectrum s = assemble(std::move(bound), std::vector<double>(count, 0.0), p, reality_tol);
    s.energies.assign(eigs.begin(), eigs.end());
    std::sort(s.energies.begin(), s.energies.end(),
              [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
    s.pt_violations = std::move(violations);
    for (const cplx& v : s.pt_violations) {
        std::ostringstream os;
        os << "PT reality violated: E = " << v.real() << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag())
           << "i";
        s.warnings.push_back(os.str());
    }
    s.level_values.push_back(s.bound_values);
    return s;
}

Spectrum converge_spectrum(const PotentialParams& p, const GridSpec& base, int levels, double reality_tol,
                           bool concurrent) {
    if (levels < 2) throw UsageError("converge_spectrum needs at least 2 levels");
    require_valid(p);
    validate_grid(base, p.family);

    // (N-1) 2^L + 1 points halve h exactly at every level.
    std::vector<GridSpec> grids;
    for (int L = 0; L < levels; ++L) {
        GridSpec g = base;
        g.n_points = (base.n_points - 1) * (std::size_t{1} << L) + 1;
        grids.push_back(g);
    }
    const auto policy = concurrent ? std::launch::async : std::launch::deferred;
    std::vector<std::future<std::vector<cplx>>> jobs;
    for (const GridSpec& g : grids)
        jobs.push_back(std::async(policy, [&p, g] { return solve_all(discretize(p, g), p.family); }));
    std::vector<std::vector<cplx>> all;
    for (auto& j : jobs) all.push_back(j.get());

    const double threshold = continuum_threshold(p.k);
    std::vector<std::vector<cplx>> bound(levels);
    std::vector<cplx> violations;
    for (int L = 0; L < levels; ++L) {
        std::vector<cplx> viol;
        split(all[L], threshold, reality_tol, 0.0, bound[L], viol);
        std::sort(bound[L].begin(), bound[L].end(), [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
        if (L + 1 == levels) violations = std::move(viol);
        if (L > 0 && bound[L].size() != bound[L - 1].size()) {
            std::ostringstream os;
            os << "bound-state count changed between refinement levels: " << bound[L - 1].size() << " at N = "
               << grids[L - 1].n_points << ", " << bound[L].size() << " at N = " << grids[L].n_points;
            throw ConvergenceError(os.str());
        }
    }

    const std::vector<cplx>& fine = bound[levels - 1];
    const std::vector<cplx>& coarse = bound[levels - 2];
    std::vector<cplx> extrapolated;
    std::vector<double> errors;
    std::vector<std::string> dropped;
    for (std::size_t i = 0; i < fine.size(); ++i) {
        const cplx e = (4.0 * fine[i] - coarse[i]) / 3.0;
        const double err = std::abs(fine[i] - coarse[i]);
        if (e.real() < threshold - 10.0 * err) {
            extrapolated.push_back(e);
            errors.push_back(err);
        } else {
            std::ostringstream os;
            os << "state at E = " << e.real() << " lies within 10x its refinement error (" << err
               << ") of the threshold; not counted";
            dropped.push_back(os.str());
        }
    }

    Spectrum s = assemble(std::move(extrapolated), std::move(errors), p, reality_tol);
    s.grid = base;
    s.energies = all[levels - 1];
    std::sort(s.energies.begin(), s.energies.end(),
              [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
    s.pt_violations = std::move(violations);
    s.level_values = std::move(bound);
    s.warnings.insert(s.warnings.end(), dropped.begin(), dropped.end());
    for (const cplx& v : s.pt_violations) {
        std::ostringstream os;
        os << "PT reality violated: E = " << v.real() << " with |Im E| = " << std::abs(v.imag());
        s.warnings.push_back(os.str());
    }
    return s;
}

double convergence_order(const Spectrum& s, std::size_t state) {
    const std::size_t L = s.level_values.size();
    if (L < 3) throw UsageError("convergence_order needs at least three refinement levels");
    const auto& a = s.level_values[L - 3];
    const auto& b = s.level_values[L - 2];
    const auto& c = s.level_values[L - 1];
    if (state >= a.size() || state >= b.size() || state >= c.size())
        throw UsageError("convergence_order: state index out of range");
    return std::log2(std::abs(a[state] - b[state]) / std::abs(b[state] - c[state]));
}

double tail_mismatch(const PotentialParams& p, const GridSpec& g) {
    const double thr = continuum_threshold(p.k);
    const AlgebraFunctions af = make_algebra_functions(p);
    double worst = std::abs(evaluate_potential(p, af, g.x_max).v_total - thr);
    if (p.family == Family::ScarfII)
        worst = std::max(worst, std::abs(evaluate_potential(p, af, g.x_min).v_total - thr));
    return worst;
}

}  // namespace potalg
