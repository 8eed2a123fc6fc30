#include <string>

#include "doctest.h"
#include "potalg/errors.hpp"
#include "potalg/params.hpp"

using potalg::Family;
using potalg::PotentialParams;

namespace {

bool mentions(const potalg::ValidationReport& r, const std::string& needle) {
    for (const auto& v : r.violations)
        if (v.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("validate_params: worked cases") {
    const auto ok = potalg::validate_params({Family::GPT, 5.0, 3.5, 1});
    CHECK(ok.valid);
    CHECK(ok.n_max == 2);
    CHECK(ok.threshold == doctest::Approx(9.0));

    const auto bad_b = potalg::validate_params({Family::GPT, 3.0, 3.5, 1});
    CHECK_FALSE(bad_b.valid);
    CHECK(mentions(bad_b, "B > k+1/2"));

    const auto bad_k = potalg::validate_params({Family::ScarfII, 2.0, 0.4, 1});
    CHECK_FALSE(bad_k.valid);
    CHECK(mentions(bad_k, "k > 1/2"));

    CHECK_THROWS_AS(potalg::require_valid({Family::GPT, 3.0, 3.5, 1}), potalg::ParameterError);
}

TEST_CASE("validate_params: singular extension is rejected") {
    // The m = 3 denominator of U(x, 3) has a zero at cosh x ~ 1.63 for B = 5.
    CHECK_FALSE(potalg::validate_params({Family::GPT, 5.0, 3.5, 3}).valid);
    CHECK(potalg::validate_params({Family::GPT, 8.0, 3.5, 3}).valid);
    CHECK(potalg::validate_params({Family::ScarfII, 2.0, 2.5, 3}).valid);
}

TEST_CASE("ladder size and threshold") {
    CHECK(potalg::ladder_n_max(3.5) == 2);
    CHECK(potalg::ladder_n_max(2.5) == 1);
    CHECK(potalg::ladder_n_max(3.0) == 2);  // n < 2.5
    CHECK(potalg::ladder_n_max(0.75) == 0);
    CHECK(potalg::ladder_n_max(0.5) == -1);
    CHECK(potalg::continuum_threshold(2.5) == doctest::Approx(4.0));
}

TEST_CASE("family names") {
    CHECK(potalg::parse_family("gpt") == Family::GPT);
    CHECK(potalg::parse_family("SCARF2") == Family::ScarfII);
    CHECK_FALSE(potalg::parse_family("morse").has_value());
    CHECK(potalg::to_string(Family::ScarfII) == "scarf2");
}
