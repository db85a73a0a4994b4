#include <doctest.h>

#include <cmath>

#include "spdc/dispersion.hpp"
#include "spdc/errors.hpp"

using namespace spdc;

namespace {

// a realistic multi-term model for derivative checks
DispersionModel sample_model() {
    DispersionModel m;
    m.terms = {
        {Term::Kind::Const, 5.28, 0.0},
        {Term::Kind::Pole, 0.12, 0.09},
        {Term::Kind::Resonance, 1.7, 400.0},
        {Term::Kind::Power, -0.0021, 2.0},
    };
    m.valid_range_um = {0.5, 12.0};
    return m;
}

} // namespace

TEST_CASE("constant term gives a flat index") {
    DispersionModel m;
    m.terms = {{Term::Kind::Const, 4.0, 0.0}};
    m.valid_range_um = {0.1, 100.0};
    CHECK(m.n(0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m.n(7.3) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m.dn_dlam(7.3) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(m.group_index(7.3) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("term kinds evaluate to their closed forms") {
    const double lam = 2.0, L2 = 4.0;
    DispersionModel m;
    m.terms = {{Term::Kind::Const, 1.0, 0.0},
               {Term::Kind::Pole, 0.5, 0.25},
               {Term::Kind::Resonance, 2.0, 100.0},
               {Term::Kind::Power, 0.01, 2.0}};
    m.valid_range_um = {0.5, 10.0};
    const double expect =
        1.0 + 0.5 / (L2 - 0.25) + 2.0 * L2 / (L2 - 100.0) + 0.01 * std::pow(lam, 2.0);
    CHECK(m.n2(lam) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("evaluating on a pole is an error") {
    DispersionModel m;
    m.terms = {{Term::Kind::Const, 2.0, 0.0}, {Term::Kind::Pole, 0.3, 1.44}};
    m.valid_range_um = {0.5, 10.0};
    CHECK_THROWS_AS((void)m.n2(1.2), range_error); // lam^2 == 1.44 exactly
    CHECK_NOTHROW((void)m.n2(1.3));
}

TEST_CASE("analytic dn/dlam matches central finite differences") {
    const auto m = sample_model();
    const double h = 1e-6;
    for (double lam : {0.7, 1.3, 2.9, 5.5, 9.8}) {
        const double fd = (m.n(lam + h) - m.n(lam - h)) / (2.0 * h);
        const double an = m.dn_dlam(lam);
        CHECK(an == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("group index equals n minus lambda dn/dlam") {
    const auto m = sample_model();
    for (double lam : {0.8, 2.2, 6.5}) {
        CHECK(m.group_index(lam) ==
              doctest::Approx(m.n(lam) - lam * m.dn_dlam(lam)).epsilon(1e-15));
    }
}

TEST_CASE("checked evaluation enforces the validity window") {
    const auto m = sample_model();
    CHECK_NOTHROW((void)m.n_checked(0.5));
    CHECK_NOTHROW((void)m.n_checked(12.0)); // bounds inclusive
    CHECK_THROWS_AS((void)m.n_checked(0.49), range_error);
    CHECK_THROWS_AS((void)m.n_checked(12.01), range_error);
}

TEST_CASE("checked evaluation rejects a negative n^2") {
    DispersionModel m;
    m.terms = {{Term::Kind::Const, -1.0, 0.0}};
    m.valid_range_um = {0.1, 10.0};
    CHECK_THROWS_AS((void)m.n_checked(1.0), validation_error);
}
