#include "potalg/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "potalg/algebra.hpp"
#include "potalg/errors.hpp"
#include "potalg/potentials.hpp"
#include "potalg/susy.hpp"
#include "potalg/verify.hpp"

namespace potalg::cli {

std::string_view to_string(Command c) {
    switch (c) {
        case Command::Potential: return "potential";
        case Command::Spectrum: return "spectrum";
        case Command::VerifyAlgebra: return "verify-algebra";
        case Command::VerifySusy: return "verify-susy";
        case Command::Sweep: return "sweep";
    }
    return "?";
}

std::vector<double> Range::values() const {
    if (!(step > 0.0) || !std::isfinite(step)) throw UsageError("range step must be positive");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw UsageError("range bounds must be finite");
    std::vector<double> out;
    if (lo > hi) return out;
    const double span = (hi - lo) / step;
    if (span + 1.0 > static_cast<double>(kSweepCap) + 1.0)
        throw UsageError("range " + format_number(lo) + ":" + format_number(hi) + ":" + format_number(step) +
                         " has more than " + std::to_string(kSweepCap) + " values");
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

Range parse_range(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("malformed range '" + text + "' (expected lo:hi:step)");
        }
    }
    if (parts.empty() || parts.size() > 3) throw UsageError("malformed range '" + text + "' (expected lo:hi:step)");
    Range r;
    r.lo = parts[0];
    r.hi = parts.size() > 1 ? parts[1] : parts[0];
    r.step = parts.size() > 2 ? parts[2] : 1.0;
    r.values();  // validates step and size
    return r;
}

GridSpec widen_for_tail(const PotentialParams& p, GridSpec g, std::vector<std::string>& warnings) {
    constexpr double kTailTol = 1e-8;
    const double h = g.h();
    const GridSpec original = g;
    double mismatch = tail_mismatch(p, g);
    for (int i = 0; i < 8 && mismatch >= kTailTol; ++i) {
        if (p.family == Family::GPT) {
            g.x_max = g.x_min + 1.25 * (g.x_max - g.x_min);
        } else {
            const double c = 0.5 * (g.x_min + g.x_max);
            const double half = 0.625 * (g.x_max - g.x_min);
            g.x_min = c - half;
            g.x_max = c + half;
        }
        g.n_points = static_cast<std::size_t>(std::llround((g.x_max - g.x_min) / h)) + 1;
        g.x_max = g.x_min + h * static_cast<double>(g.n_points - 1);
        mismatch = tail_mismatch(p, g);
    }
    if (!(g == original)) {
        std::ostringstream os;
        os << "tail criterion |V(edge) - threshold| < 1e-8 failed on [" << original.x_min << ", " << original.x_max
           << "]; widened to [" << g.x_min << ", " << g.x_max << "] with " << g.n_points << " points (same h)";
        warnings.push_back(os.str());
    }
    if (mismatch >= kTailTol) {
        std::ostringstream os;
        os << "tail criterion still not met after widening: |V(edge) - threshold| = " << mismatch;
        warnings.push_back(os.str());
    }
    return g;
}

namespace {

GridSpec grid_for(const RunConfig& cfg) {
    if (cfg.grid_explicit) return cfg.grid;
    return default_grid(cfg.params.family, cfg.grid.n_points);
}

std::vector<double> samples_for(const RunConfig& cfg) {
    if (!cfg.grid_explicit) return default_samples(cfg.params.family, cfg.grid.n_points);
    const GridSpec& g = cfg.grid;
    validate_grid(g, cfg.params.family);
    std::vector<double> xs(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) xs[i] = g.x(i);
    return xs;
}

// Shared long-form schema of the two verification commands.
std::vector<Column> check_columns() {
    return {{"check", ColumnKind::Text},     {"value", ColumnKind::Real},     {"expected", ColumnKind::Real},
            {"location", ColumnKind::Real},  {"tolerance", ColumnKind::Real}, {"pass", ColumnKind::Text},
            {"note", ColumnKind::Text}};
}

void add_check(Result& r, const std::string& name, double value, Value expected, Value location, double tol,
               bool pass, std::string note = {}) {
    r.rows.push_back({name, value, std::move(expected), std::move(location), tol,
                      std::string(pass ? "true" : "false"), std::move(note)});
    if (!pass) r.exit_code = kExitToleranceFailure;
}

std::string describe(const std::complex<double>& z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

}  // namespace

Result run_potential(const RunConfig& cfg) {
    require_valid(cfg.params);
    const GridSpec g = grid_for(cfg);
    validate_grid(g, cfg.params.family);
    const AlgebraFunctions af = make_algebra_functions(cfg.params);

    Result r;
    r.columns = {{"x", ColumnKind::Real},          {"v_conventional", ColumnKind::Complex},
                 {"v_rational", ColumnKind::Complex}, {"v_total", ColumnKind::Complex},
                 {"v_casimir", ColumnKind::Complex},  {"gap", ColumnKind::Real}};
    double worst = 0.0;
    double worst_x = g.x_min;
    for (std::size_t i = 0; i < g.n_points; ++i) {
        const double x = g.x(i);
        const PotentialEvaluation e = evaluate_potential(cfg.params, af, x);
        const double gap = mixed_gap(e.v_casimir, e.v_total);
        if (!(gap <= worst)) {
            worst = gap;
            worst_x = x;
        }
        r.rows.push_back({x, e.v_conventional, e.v_rational, e.v_total, e.v_casimir, gap});
    }
    if (!(worst <= cfg.tol.gap)) {
        r.exit_code = kExitToleranceFailure;
        r.warnings.push_back("Casimir gap " + format_number(worst) + " at x = " + format_number(worst_x) +
                             " exceeds " + format_number(cfg.tol.gap));
    }
    return r;
}

Result run_spectrum(const RunConfig& cfg) {
    require_valid(cfg.params);
    Result r;
    GridSpec g = grid_for(cfg);
    validate_grid(g, cfg.params.family);
    g = widen_for_tail(cfg.params, g, r.warnings);
    const Spectrum s = converge_spectrum(cfg.params, g, cfg.levels, cfg.tol.reality, false);
    r.warnings.insert(r.warnings.end(), s.warnings.begin(), s.warnings.end());

    r.columns = {{"kind", ColumnKind::Text},       {"n", ColumnKind::Integer},
                 {"e_closed", ColumnKind::Real},     {"e_numeric", ColumnKind::Complex},
                 {"abs_delta", ColumnKind::Real},    {"refinement_error", ColumnKind::Real},
                 {"abs_im", ColumnKind::Real}};
    // Floor guards against exact agreement at every level (zero refinement error).
    constexpr double kDeltaFloor = 1e-12;
    for (const LadderLevel& lv : s.ladder) {
        if (!lv.found) {
            r.rows.push_back({std::string("ladder"), std::int64_t{lv.n}, lv.closed_form, std::monostate{},
                              std::monostate{}, std::monostate{}, std::monostate{}});
            r.exit_code = kExitToleranceFailure;
            continue;
        }
        const double delta = std::abs(lv.numeric.real() - lv.closed_form);
        r.rows.push_back({std::string("ladder"), std::int64_t{lv.n}, lv.closed_form, lv.numeric, delta,
                          lv.refinement_error, std::abs(lv.numeric.imag())});
        if (delta > 10.0 * std::max(lv.refinement_error, kDeltaFloor)) {
            r.exit_code = kExitToleranceFailure;
            r.warnings.push_back("level n = " + std::to_string(lv.n) + ": |delta| = " + format_number(delta) +
                                 " exceeds 10x refinement error " + format_number(lv.refinement_error));
        }
    }
    for (std::size_t i = 0; i < s.bound_values.size(); ++i) {
        const cplx& e = s.bound_values[i];
        if (std::find(s.extra_states.begin(), s.extra_states.end(), e) == s.extra_states.end()) continue;
        r.rows.push_back({std::string("extra"), std::monostate{}, std::monostate{}, e, std::monostate{},
                          s.refinement_error[i], std::abs(e.imag())});
    }
    for (const cplx& e : s.pt_violations) {
        r.rows.push_back({std::string("pt_violation"), std::monostate{}, std::monostate{}, e, std::monostate{},
                          std::monostate{}, std::abs(e.imag())});
        r.exit_code = kExitToleranceFailure;
    }
    if (!s.extra_states.empty()) {
        std::string list;
        for (const cplx& e : s.extra_states) list += (list.empty() ? "" : ", ") + describe(e);
        r.warnings.push_back("bound states outside the ladder: " + list);
    }
    return r;
}

Result run_verify_algebra(const RunConfig& cfg) {
    require_valid(cfg.params);
    const std::vector<double> xs = samples_for(cfg);
    std::optional<AlgebraFunctions> over;
    if (cfg.fault) {
        if (*cfg.fault != "tanh2x") throw UsageError("unknown fault '" + *cfg.fault + "' (known: tanh2x)");
        over = inject_fault_tanh2x(make_algebra_functions(cfg.params));
    }
    const ResidualReport rep = build_residual_report(cfg.params, xs, over);

    Result r;
    r.columns = check_columns();
    auto row = [&](const char* name, const MaxResidual& m, double tol, std::string note = {}) {
        add_check(r, name, m.value, 0.0, m.at, tol, m.value <= tol, std::move(note));
    };
    row("rest1_F", rep.rest1_F, cfg.tol.rest, "F' + F^2 - 1");
    row("rest1_G", rep.rest1_G, cfg.tol.rest, "G' + F G");
    row("rest2", rep.rest2, cfg.tol.rest, cfg.params.m == 0 ? "U = 0" : "");
    row("casimir_gap", rep.casimir_vs_closed, cfg.tol.gap, "|dV| / max(1, |V|)");
    return r;
}

Result run_verify_susy(const RunConfig& cfg) {
    require_valid(cfg.params);
    const double a = cfg.si_index.value_or(cfg.params.a());
    const std::vector<double> xs = samples_for(cfg);
    const ShapeInvarianceReport si = shape_invariance_residual(cfg.params, a, xs);

    Result r;
    r.columns = check_columns();
    const std::string conv(to_string(si.sign_convention));
    add_check(r, "si_spread", si.r_stddev, 0.0, std::monostate{}, cfg.tol.si, si.r_stddev <= cfg.tol.si, conv);
    const double rem_tol = cfg.tol.si * std::max(1.0, std::abs(si.r_expected));
    add_check(r, "si_remainder", si.r_mean, si.r_expected, std::monostate{}, rem_tol,
              std::abs(si.r_mean - si.r_expected) <= rem_tol, conv);
    add_check(r, "si_imag", si.r_imag, 0.0, std::monostate{}, cfg.tol.si, si.r_imag <= cfg.tol.si, conv);
    add_check(r, "si_rejected_spread", si.rejected_relative_stddev, std::monostate{}, std::monostate{}, 0.0, true,
              "relative spread of the other sign convention");

    // Telescoping the remainders down the ladder of V at k = a + 1/2.
    const double k = a + 0.5;
    for (int n = 0; n <= ladder_n_max(k); ++n) {
        const double tele = energy_from_remainders(k, n);
        const double closed = energy_closed_form(k, n);
        const double tol = 1e-12 * std::max(1.0, std::abs(closed));
        add_check(r, "telescoping_n" + std::to_string(n), tele, closed, std::monostate{}, tol,
                  std::abs(tele - closed) <= tol);
    }
    return r;
}

Result run_sweep(const RunConfig& cfg) {
    const std::vector<double> Bs = cfg.B_range ? cfg.B_range->values() : std::vector<double>{cfg.params.B};
    const std::vector<double> ks = cfg.k_range ? cfg.k_range->values() : std::vector<double>{cfg.params.k};
    std::vector<unsigned> ms;
    if (cfg.m_range) {
        for (double v : cfg.m_range->values()) {
            if (v < 0.0 || std::abs(v - std::round(v)) > 1e-9)
                throw UsageError("m range must contain non-negative integers (got " + format_number(v) + ")");
            ms.push_back(static_cast<unsigned>(std::llround(v)));
        }
    } else {
        ms.push_back(cfg.params.m);
    }
    const std::size_t combos = Bs.size() * ks.size() * ms.size();
    if (combos > kSweepCap)
        throw UsageError("sweep has " + std::to_string(combos) + " parameter tuples; the cap is " +
                         std::to_string(kSweepCap));

    Result r;
    r.columns = {{"B", ColumnKind::Real},           {"k", ColumnKind::Real},
                 {"m", ColumnKind::Integer},        {"n", ColumnKind::Integer},
                 {"status", ColumnKind::Text},      {"e_closed", ColumnKind::Real},
                 {"e_numeric", ColumnKind::Complex}, {"abs_delta", ColumnKind::Real},
                 {"refinement_error", ColumnKind::Real}, {"iso_deviation", ColumnKind::Real},
                 {"message", ColumnKind::Text}};
    if (combos == 0) return r;

    // Tuples to solve: the requested ones plus each (B, k) reference at m = 0.
    using Key = std::tuple<double, double, unsigned>;
    std::vector<Key> keys;
    for (double B : Bs)
        for (double k : ks) {
            keys.emplace_back(B, k, 0u);
            for (unsigned m : ms)
                if (m != 0) keys.emplace_back(B, k, m);
        }

    struct Outcome {
        std::optional<Spectrum> spectrum;
        std::string error;
        std::vector<std::string> warnings;
    };
    std::vector<Outcome> outcomes(keys.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < keys.size();) {
            const auto [B, k, m] = keys[i];
            PotentialParams p = cfg.params;
            p.B = B;
            p.k = k;
            p.m = m;
            Outcome& o = outcomes[i];
            try {
                require_valid(p);
                GridSpec g = grid_for(cfg);
                validate_grid(g, p.family);
                g = widen_for_tail(p, g, o.warnings);
                o.spectrum = converge_spectrum(p, g, cfg.levels, cfg.tol.reality, false);
            } catch (const std::exception& e) {
                o.error = e.what();
            }
        }
    };
    const std::size_t threads =
        std::min<std::size_t>(keys.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::map<Key, const Outcome*> by_key;
    for (std::size_t i = 0; i < keys.size(); ++i) by_key[keys[i]] = &outcomes[i];

    // std::map iteration gives lexicographic (B, k, m) order.
    std::vector<std::string> notes;
    for (const auto& [key, o] : by_key) {
        const auto [B, k, m] = key;
        if (m == 0 && std::find(ms.begin(), ms.end(), 0u) == ms.end()) continue;
        for (const std::string& w : o->warnings)
            notes.push_back("B=" + format_number(B) + " k=" + format_number(k) + " m=" + std::to_string(m) + ": " + w);
        if (!o->spectrum) {
            r.rows.push_back({B, k, std::int64_t{m}, std::monostate{}, std::string("error"), std::monostate{},
                              std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{}, o->error});
            continue;
        }
        const Spectrum& s = *o->spectrum;
        const Outcome* ref = by_key.at(Key{B, k, 0u});
        Value iso = std::monostate{};
        if (ref->spectrum) {
            double dev = 0.0;
            for (std::size_t n = 0; n < s.ladder.size() && n < ref->spectrum->ladder.size(); ++n) {
                const LadderLevel& a = s.ladder[n];
                const LadderLevel& b = ref->spectrum->ladder[n];
                if (a.found && b.found) dev = std::max(dev, std::abs(a.numeric - b.numeric));
            }
            iso = dev;
            if (dev > cfg.tol.isospectral) {
                r.exit_code = kExitToleranceFailure;
                notes.push_back("B=" + format_number(B) + " k=" + format_number(k) + " m=" + std::to_string(m) +
                                ": isospectral deviation " + format_number(dev) + " exceeds " +
                                format_number(cfg.tol.isospectral));
            }
        }
        for (const LadderLevel& lv : s.ladder) {
            if (!lv.found) {
                r.rows.push_back({B, k, std::int64_t{m}, std::int64_t{lv.n}, std::string("missing"), lv.closed_form,
                                  std::monostate{}, std::monostate{}, std::monostate{}, iso,
                                  std::string("no eigenvalue near this level")});
                continue;
            }
            r.rows.push_back({B, k, std::int64_t{m}, std::int64_t{lv.n}, std::string("ok"), lv.closed_form,
                              lv.numeric, std::abs(lv.numeric.real() - lv.closed_form), lv.refinement_error, iso,
                              std::string{}});
        }
    }
    r.warnings = std::move(notes);
    return r;
}

Result run(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::Potential: return run_potential(cfg);
        case Command::Spectrum: return run_spectrum(cfg);
        case Command::VerifyAlgebra: return run_verify_algebra(cfg);
        case Command::VerifySusy: return run_verify_susy(cfg);
        case Command::Sweep: return run_sweep(cfg);
    }
    throw UsageError("unknown command");
}

namespace {

struct Options {
    std::string family = "gpt";
    std::optional<double> B, k, x_min, x_max, a;
    unsigned m = 1;
    std::optional<std::size_t> n;
    int levels = 3;
    std::optional<std::string> format, out, B_range, k_range, m_range, fault;
    std::optional<double> tol_rest, tol_si, tol_gap, tol_iso, tol_reality;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--family", o.family, "Potential family: gpt or scarf2")->capture_default_str();
    sub->add_option("--B", o.B, "Strength B (default 5 for gpt, 2 for scarf2)");
    sub->add_option("--k", o.k, "J3 eigenvalue k (default 3.5 for gpt, 2.5 for scarf2)");
    sub->add_option("--m", o.m, "Extension index m (0 = conventional)")->capture_default_str();
    sub->add_option("--x-min", o.x_min, "Left end of the grid");
    sub->add_option("--x-max", o.x_max, "Right end of the grid");
    sub->add_option("--n", o.n, "Number of grid points");
    sub->add_option("--format", o.format, "Output format: csv or json");
    sub->add_option("--out", o.out, "Write output to this path instead of stdout");
    sub->add_option("--tol-rest", o.tol_rest, "Tolerance for rest1/rest2 residuals");
    sub->add_option("--tol-si", o.tol_si, "Tolerance for shape-invariance checks");
    sub->add_option("--tol-gap", o.tol_gap, "Tolerance for the Casimir gap");
    sub->add_option("--tol-iso", o.tol_iso, "Tolerance for sweep isospectral deviation");
    sub->add_option("--reality-tol", o.tol_reality, "Largest |Im E| counted as real");
}

OutputFormat parse_format(const std::string& s, const char* source) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw UsageError(std::string(source) + ": unknown format '" + s + "' (expected csv or json)");
}

RunConfig build_config(Command command, const Options& o) {
    RunConfig cfg;
    cfg.command = command;
    const auto fam = parse_family(o.family);
    if (!fam) throw UsageError("unknown family '" + o.family + "' (expected gpt or scarf2)");
    cfg.params.family = *fam;
    cfg.params.B = o.B.value_or(*fam == Family::GPT ? 5.0 : 2.0);
    cfg.params.k = o.k.value_or(*fam == Family::GPT ? 3.5 : 2.5);
    cfg.params.m = o.m;

    const bool dense = command == Command::Spectrum || command == Command::Sweep;
    const std::size_t n = o.n.value_or(dense ? 1000 : 200);
    cfg.grid = default_grid(*fam, n);
    if (o.x_min || o.x_max) {
        cfg.grid_explicit = true;
        if (o.x_min) cfg.grid.x_min = *o.x_min;
        if (o.x_max) cfg.grid.x_max = *o.x_max;
    }
    if (o.levels < 2) throw UsageError("--levels must be at least 2");
    cfg.levels = o.levels;

    if (o.format)
        cfg.format = parse_format(*o.format, "--format");
    else if (const char* env = std::getenv("POTALG_DEFAULT_FORMAT"); env && *env)
        cfg.format = parse_format(env, "POTALG_DEFAULT_FORMAT");
    cfg.output_path = o.out;

    if (o.tol_rest) cfg.tol.rest = *o.tol_rest;
    if (o.tol_si) cfg.tol.si = *o.tol_si;
    if (o.tol_gap) cfg.tol.gap = *o.tol_gap;
    if (o.tol_iso) cfg.tol.isospectral = *o.tol_iso;
    if (o.tol_reality) cfg.tol.reality = *o.tol_reality;

    if (o.B_range) cfg.B_range = parse_range(*o.B_range);
    if (o.k_range) cfg.k_range = parse_range(*o.k_range);
    if (o.m_range) cfg.m_range = parse_range(*o.m_range);
    cfg.si_index = o.a;
    cfg.fault = o.fault;
    return cfg;
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Potential-algebra construction of rationally extended shape-invariant potentials"};
    app.set_version_flag("--version", std::string(POTALG_VERSION));
    app.require_subcommand(1);
    Options o;

    auto* pot = app.add_subcommand("potential", "Tabulate the potential and its Casimir assembly on a grid");
    auto* spc = app.add_subcommand("spectrum", "Compare numerical bound states with the closed-form ladder");
    auto* va = app.add_subcommand("verify-algebra", "Check the algebra constraints and the Casimir assembly");
    auto* vs = app.add_subcommand("verify-susy", "Check shape invariance and the telescoped ladder");
    auto* sw = app.add_subcommand("sweep", "Spectra over a grid of (B, k, m) with isospectral deviation");
    for (auto* sub : {pot, spc, va, vs, sw}) add_common(sub, o);
    for (auto* sub : {spc, sw})
        sub->add_option("--levels", o.levels, "Refinement levels (grid halvings + 1)")->capture_default_str();
    sw->add_option("--B-range", o.B_range, "B values as lo:hi:step");
    sw->add_option("--k-range", o.k_range, "k values as lo:hi:step");
    sw->add_option("--m-range", o.m_range, "m values as lo:hi:step");
    vs->add_option("--a", o.a, "Shifted index a (default k - 1/2)");
    va->add_option("--inject-fault", o.fault, "Replace F by a faulty function (tanh2x)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    Command command = Command::Spectrum;
    if (pot->parsed()) command = Command::Potential;
    if (va->parsed()) command = Command::VerifyAlgebra;
    if (vs->parsed()) command = Command::VerifySusy;
    if (sw->parsed()) command = Command::Sweep;

    try {
        const RunConfig cfg = build_config(command, o);
        const Result result = run(cfg);
        for (const std::string& w : result.warnings) err << "warning: " << w << '\n';
        const std::string text = render(result, cfg);
        if (cfg.output_path)
            write_atomically(*cfg.output_path, text);
        else
            out << text;
        return result.exit_code;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConvergenceError& e) {
        err << "error: no convergence: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const NumericalFailure& e) {
        err << "error: eigensolver failed (block " << e.block_index() << "): " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace potalg::cli
