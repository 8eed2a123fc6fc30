#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "potalg/algebra.hpp"
#include "potalg/errors.hpp"
#include "potalg/potentials.hpp"
#include "potalg/spectral.hpp"
#include "potalg/susy.hpp"
#include "potalg/verify.hpp"

namespace py = pybind11;
using namespace potalg;

namespace {

py::dict residual_dict(const MaxResidual& m) {
    py::dict d;
    d["value"] = m.value;
    d["at"] = m.at;
    return d;
}

}  // namespace

PYBIND11_MODULE(_potalg, mod) {
    mod.doc() = "Potential-algebra construction of rationally extended shape-invariant potentials";

    auto base = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(mod, "DomainError", base.ptr());
    py::register_exception<ParameterError>(mod, "ParameterError", base.ptr());
    py::register_exception<UsageError>(mod, "UsageError", base.ptr());
    py::register_exception<RangeError>(mod, "RangeError", base.ptr());
    py::register_exception<NumericalFailure>(mod, "NumericalFailure", base.ptr());
    py::register_exception<ConvergenceError>(mod, "ConvergenceError", base.ptr());

    py::enum_<Family>(mod, "Family").value("GPT", Family::GPT).value("ScarfII", Family::ScarfII);

    py::class_<PotentialParams>(mod, "PotentialParams")
        .def(py::init([](Family family, double B, double k, unsigned m) { return PotentialParams{family, B, k, m}; }),
             py::arg("family") = Family::GPT, py::arg("B") = 5.0, py::arg("k") = 3.5, py::arg("m") = 1u)
        .def_readwrite("family", &PotentialParams::family)
        .def_readwrite("B", &PotentialParams::B)
        .def_readwrite("k", &PotentialParams::k)
        .def_readwrite("m", &PotentialParams::m)
        .def_property_readonly("a", &PotentialParams::a)
        .def("__eq__", [](const PotentialParams& a, const PotentialParams& b) { return a == b; })
        .def("__repr__", [](const PotentialParams& p) {
            return "PotentialParams(" + std::string(to_string(p.family)) + ", B=" + std::to_string(p.B) +
                   ", k=" + std::to_string(p.k) + ", m=" + std::to_string(p.m) + ")";
        });

    py::class_<ValidationReport>(mod, "ValidationReport")
        .def_readonly("valid", &ValidationReport::valid)
        .def_readonly("violations", &ValidationReport::violations)
        .def_readonly("warnings", &ValidationReport::warnings)
        .def_readonly("n_max", &ValidationReport::n_max)
        .def_readonly("threshold", &ValidationReport::threshold);
    mod.def("validate_params", &validate_params);

    mod.def("jacobi_poly", [](int n, double alpha, double beta, cplx z) { return jacobi_poly({n, alpha, beta}, z); },
            py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("z"));
    mod.def("energy_closed_form", &energy_closed_form, py::arg("k"), py::arg("n"));
    mod.def("energy_from_remainders", &energy_from_remainders, py::arg("k"), py::arg("n"));
    mod.def("casimir_potential", py::overload_cast<const PotentialParams&, double>(&casimir_potential));
    mod.def("potential_conventional", &potential_conventional);
    mod.def("potential_rational", &potential_rational);
    mod.def("default_samples", &default_samples, py::arg("family"), py::arg("count") = 200);

    mod.def(
        "evaluate_potential",
        [](const PotentialParams& p, const std::vector<double>& xs) {
            const AlgebraFunctions af = make_algebra_functions(p);
            std::vector<cplx> conv, rat, total, cas;
            for (double x : xs) {
                const PotentialEvaluation e = evaluate_potential(p, af, x);
                conv.push_back(e.v_conventional);
                rat.push_back(e.v_rational);
                total.push_back(e.v_total);
                cas.push_back(e.v_casimir);
            }
            py::dict d;
            d["x"] = xs;
            d["v_conventional"] = conv;
            d["v_rational"] = rat;
            d["v_total"] = total;
            d["v_casimir"] = cas;
            return d;
        },
        py::arg("params"), py::arg("xs"), "Every potential channel on a list of points.");

    mod.def(
        "residual_report",
        [](const PotentialParams& p, std::optional<std::vector<double>> xs) {
            const std::vector<double> pts = xs ? *xs : default_samples(p.family);
            const ResidualReport r = build_residual_report(p, pts);
            py::dict d;
            d["rest1_F"] = residual_dict(r.rest1_F);
            d["rest1_G"] = residual_dict(r.rest1_G);
            d["rest2"] = residual_dict(r.rest2);
            d["casimir_vs_closed"] = residual_dict(r.casimir_vs_closed);
            d["sample_count"] = r.sample_count;
            return d;
        },
        py::arg("params"), py::arg("xs") = py::none());

    mod.def(
        "superpotential",
        [](const PotentialParams& p, double a, double x) {
            const SuperpotentialEval w = superpotential(p, a, x);
            return py::make_tuple(w.w, w.w_prime);
        },
        py::arg("params"), py::arg("a"), py::arg("x"), "(W, W') at one point.");

    mod.def(
        "shape_invariance",
        [](const PotentialParams& p, double a, std::optional<std::vector<double>> xs) {
            const std::vector<double> pts = xs ? *xs : default_samples(p.family);
            const ShapeInvarianceReport r = shape_invariance_residual(p, a, pts);
            py::dict d;
            d["a"] = r.a;
            d["r_mean"] = r.r_mean;
            d["r_stddev"] = r.r_stddev;
            d["r_imag"] = r.r_imag;
            d["r_expected"] = r.r_expected;
            d["sign_convention"] = std::string(to_string(r.sign_convention));
            d["shape_invariant"] = r.shape_invariant;
            return d;
        },
        py::arg("params"), py::arg("a"), py::arg("xs") = py::none());

    mod.def("eigen_real_tridiagonal",
            [](const std::vector<double>& d, const std::vector<double>& e) { return eigen_real_tridiagonal(d, e); });
    mod.def("eigen_complex_tridiagonal",
            [](const std::vector<cplx>& d, const std::vector<cplx>& e) { return eigen_complex_tridiagonal(d, e); });

    mod.def(
        "converge_spectrum",
        [](const PotentialParams& p, std::optional<double> x_min, std::optional<double> x_max, std::size_t n,
           int levels) {
            GridSpec g = default_grid(p.family, n);
            if (x_min) g.x_min = *x_min;
            if (x_max) g.x_max = *x_max;
            Spectrum s;
            {
                py::gil_scoped_release release;
                s = converge_spectrum(p, g, levels);
            }
            py::list ladder;
            for (const LadderLevel& lv : s.ladder) {
                py::dict d;
                d["n"] = lv.n;
                d["closed_form"] = lv.closed_form;
                d["found"] = lv.found;
                d["numeric"] = lv.found ? py::cast(lv.numeric) : py::none();
                d["refinement_error"] = lv.refinement_error;
                ladder.append(d);
            }
            py::dict d;
            d["bound_values"] = s.bound_values;
            d["refinement_error"] = s.refinement_error;
            d["threshold"] = s.threshold;
            d["ladder"] = ladder;
            d["extra_states"] = s.extra_states;
            d["pt_violations"] = s.pt_violations;
            d["warnings"] = s.warnings;
            d["convergence_order"] = levels >= 3 && !s.bound_values.empty() ? py::cast(convergence_order(s, 0))
                                                                             : py::none();
            return d;
        },
        py::arg("params"), py::arg("x_min") = py::none(), py::arg("x_max") = py::none(), py::arg("n") = 1000,
        py::arg("levels") = 3);
}
