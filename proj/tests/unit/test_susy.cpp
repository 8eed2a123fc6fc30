#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "potalg/algebra.hpp"
#include "potalg/errors.hpp"
#include "potalg/spectral.hpp"
#include "potalg/susy.hpp"

using potalg::cplx;
using potalg::Family;
using potalg::PotentialParams;

namespace {

const cplx I(0.0, 1.0);

}  // namespace

TEST_CASE("superpotential at worked points") {
    const auto w = potalg::superpotential({Family::GPT, 5.0, 3.5, 0}, 3.0, 1.0);
    CHECK(std::abs(w.w - (3.0 / std::tanh(1.0) - 5.0 / std::sinh(1.0))) < 1e-14);
    CHECK(w.w2 == cplx(0.0));

    // With G = -iB sech x the a-term vanishes at x = 0 and W = iB.
    const auto s = potalg::superpotential({Family::ScarfII, 2.0, 2.5, 0}, 2.0, 0.0);
    CHECK(std::abs(s.w - 2.0 * I) < 1e-15);

    for (const PotentialParams p : {PotentialParams{Family::GPT, 5.0, 3.5, 0}, PotentialParams{Family::ScarfII, 2.0, 2.5, 0}}) {
        const auto af = potalg::make_algebra_functions(p);
        for (double x : {0.3, 1.7}) CHECK(std::abs(potalg::superpotential(af, 0.0, x).w + af.G(x)) < 1e-15);
    }
}

TEST_CASE("partner pair") {
    potalg::SuperpotentialEval c;
    c.w = 1.5;
    c.w_prime = 0.0;
    const auto [plus, minus] = potalg::partner_pair(c);
    CHECK(plus == cplx(2.25));
    CHECK(minus == cplx(2.25));

    const double ct = 1.0 / std::tanh(1.0), cs = 1.0 / std::sinh(1.0);
    const double w = 3.0 * ct - 5.0 * cs;
    const double wp = -3.0 * cs * cs + 5.0 * cs * ct;
    const auto [p, m] = potalg::partner_pair({Family::GPT, 5.0, 3.5, 0}, 3.0, 1.0);
    CHECK(std::abs(p - (w * w + wp)) < 1e-12);
    CHECK(std::abs(m - (w * w - wp)) < 1e-12);
}

TEST_CASE("W' matches a central difference and W^2 - W' rebuilds V") {
    const double h = 1e-5;
    for (const PotentialParams p : {PotentialParams{Family::GPT, 5.0, 3.5, 1}, PotentialParams{Family::GPT, 8.0, 3.5, 3},
                                    PotentialParams{Family::ScarfII, 2.0, 2.5, 2}}) {
        const auto af = potalg::make_algebra_functions(p);
        const std::vector<double> xs =
            p.family == Family::GPT ? std::vector<double>{0.2, 1.0, 6.0} : std::vector<double>{-3.0, 0.0, 0.8};
        for (double x : xs) {
            const auto w = potalg::superpotential(af, p.a(), x);
            const cplx fd =
                (potalg::superpotential(af, p.a(), x + h).w - potalg::superpotential(af, p.a(), x - h).w) / (2.0 * h);
            CHECK(std::abs(w.w_prime - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
            const cplx v = potalg::casimir_potential(af, p.k, x);
            CHECK(std::abs(w.w * w.w - w.w_prime - v) < 1e-10 * std::max(1.0, std::abs(v)));
        }
    }
}

TEST_CASE("shape invariance closes with remainder 2a + 1") {
    const auto xs = potalg::default_samples(Family::GPT);
    for (unsigned m : {0u, 1u, 2u}) {
        const auto r = potalg::shape_invariance_residual({Family::GPT, 6.0, 3.5, m}, 3.0, xs);
        CAPTURE(m);
        CHECK(r.shape_invariant);
        CHECK(r.sign_convention == potalg::SignConvention::MinusPlus);
        CHECK(std::abs(r.r_mean - 7.0) < 1e-8);
        CHECK(r.r_stddev <= 1e-8);
        CHECK(r.r_expected == 7.0);
        CHECK(r.rejected_relative_stddev > 1e-3);
    }
    const auto ys = potalg::default_samples(Family::ScarfII);
    for (unsigned m : {0u, 1u, 2u, 3u}) {
        const auto r = potalg::shape_invariance_residual({Family::ScarfII, 2.0, 2.5, m}, 2.0, ys);
        CHECK(std::abs(r.r_mean - 5.0) < 1e-8);
        CHECK(r.r_stddev <= 1e-8);
        CHECK(r.r_imag <= 1e-8);
    }
    // The partner at k + 1 must itself be admissible.
    CHECK_THROWS_AS(potalg::shape_invariance_residual({Family::GPT, 5.0, 3.5, 1}, 3.0, xs), potalg::ParameterError);
    CHECK_THROWS_AS(potalg::shape_invariance_residual({Family::GPT, 6.0, 3.5, 1}, 3.0, std::vector<double>{}),
                    potalg::UsageError);
}

TEST_CASE("telescoped remainders give the ladder") {
    CHECK(potalg::energy_from_remainders(3.5, 0) == 0.0);
    CHECK(potalg::energy_from_remainders(3.5, 1) == 5.0);
    CHECK(potalg::energy_from_remainders(3.5, 2) == 8.0);
    for (double k : {2.5, 4.0, 6.5})
        for (int n = 0; n <= potalg::ladder_n_max(k); ++n)
            CHECK(potalg::energy_from_remainders(k, n) == doctest::Approx(potalg::energy_closed_form(k, n)));
    CHECK_THROWS_AS(potalg::energy_from_remainders(3.5, 3), potalg::RangeError);
}

TEST_CASE("partner potential loses the ground state") {
    // W^2 + W' at a shares every level of W^2 - W' except E = 0.
    const PotentialParams p{Family::GPT, 6.0, 3.5, 1};
    const auto af = potalg::make_algebra_functions(p);
    const auto op = potalg::discretize(
        [&](double x) { return potalg::partner_pair(potalg::superpotential(af, p.a(), x)).first; },
        potalg::GridSpec{0.01, 25.0, 4000});
    const auto ev = potalg::eigen_real_tridiagonal(op);
    CHECK(std::abs(ev[0] - 5.0) < 2e-3);
    CHECK(std::abs(ev[1] - 8.0) < 2e-3);
    CHECK(ev[2] > 9.0 - 1e-2);
}
