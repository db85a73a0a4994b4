#include <doctest.h>

#include <cmath>

#include "spdc/errors.hpp"
#include "spdc/phasematch.hpp"
#include "spdc/registry.hpp"
#include "spdc/units.hpp"

using namespace spdc;

namespace {
const Registry& reg() {
    static Registry r = Registry::load("data/registry/crystals.json");
    return r;
}

// flat-index uniaxial record with an analytically solvable matching angle
CrystalRecord synthetic_uniaxial(double no2, double ne2) {
    CrystalRecord rec;
    rec.id = "SYN";
    rec.chemical_formula = "SYN";
    rec.optical_class = "uniaxial-positive";
    rec.point_group = "-42m";
    rec.transparency_um = {0.1, 100.0};
    DispersionAxis o, e;
    o.model.terms = {{Term::Kind::Const, no2, 0.0}};
    o.model.valid_range_um = {0.1, 100.0};
    e.model.terms = {{Term::Kind::Const, ne2, 0.0}};
    e.model.valid_range_um = {0.1, 100.0};
    rec.dispersion.emplace("o", o);
    rec.dispersion.emplace("e", e);
    rec.interaction = {"bpm", {"e", "o", "o"}, {0.5, 5.0}, 1};
    return rec;
}
} // namespace

TEST_CASE("pump and signal fix the idler through energy conservation") {
    for (double lp : {0.8, 1.5, 3.1}) {
        for (double ls : {2.0 * lp, 2.3 * lp, 4.0 * lp}) {
            const auto t = PhotonTriple::from_pump_signal(lp, ls);
            CHECK(std::abs(t.energy_residual_per_um()) < 1e-12);
        }
    }
    CHECK(PhotonTriple::degenerate(1.5).signal_um == doctest::Approx(3.0));
    CHECK_THROWS_AS((void)PhotonTriple::from_pump_signal(1.5, 1.5), range_error);
    CHECK_THROWS_AS((void)PhotonTriple::from_pump_signal(1.5, 1.0), range_error);
}

TEST_CASE("solved angles zero the wave-vector mismatch") {
    const auto& ags = reg().find("AGS");
    const auto t = PhotonTriple::degenerate(1.688);
    const auto roots = solve_bpm_angle(ags, t);
    REQUIRE(!roots.empty());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        CHECK(roots[i] >= 0.0);
        CHECK(roots[i] <= pi / 2.0 + 1e-12);
        if (i) CHECK(roots[i] > roots[i - 1]);
        CHECK(std::abs(delta_k(ags, Geometry::bpm_uniaxial(roots[i]), t)) < 1e-8);
    }
}

TEST_CASE("synthetic matching angle agrees with the closed form") {
    // o axis: n^2 = 4 + 0.2 lam; e axis: n^2 = 4.84 flat. Degenerate down-
    // conversion at pump 1 um puts the photons at n_o(2 um) and the pump on
    // the index ellipse between n_o(1 um) and n_e. Since 1/n^2(theta) is
    // linear in sin^2 theta, the matching angle is available in closed form.
    auto rec = synthetic_uniaxial(4.0, 4.84);
    rec.dispersion["o"].model.terms = {{Term::Kind::Const, 4.0, 0.0},
                                       {Term::Kind::Power, 0.2, 1.0}};
    const auto t = PhotonTriple::degenerate(1.0);
    const double inv_no2_pump = 1.0 / 4.2;  // n_o^2 at 1 um
    const double inv_ne2 = 1.0 / 4.84;
    const double inv_target2 = 1.0 / 4.4;   // photons' n_o^2 at 2 um
    const double s2 = (inv_target2 - inv_no2_pump) / (inv_ne2 - inv_no2_pump);
    const double expect = std::asin(std::sqrt(s2));

    const auto roots = solve_bpm_angle(rec, t);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("unreachable matching reports the mismatch extrema") {
    // o index above the whole e ellipse: delta_k never crosses zero
    auto rec = synthetic_uniaxial(4.84, 4.41); // n_o = 2.2 > max n_e(theta) = 2.1
    rec.interaction.pols = {"e", "o", "o"};
    const auto t = PhotonTriple::degenerate(1.0);
    try {
        (void)solve_bpm_angle(rec, t);
        FAIL("expected no_solution_error");
    } catch (const no_solution_error& e) {
        CHECK(e.f_min < 0.0);
        CHECK(e.f_max < 0.0); // pump momentum always short of the photons'
        CHECK(std::string(e.what()).find("delta_k") != std::string::npos);
    }
}

TEST_CASE("grating period compensates the bulk mismatch exactly") {
    const auto& ln = reg().find("LN");
    const auto t = PhotonTriple::degenerate(1.339);
    const double p1 = poling_period(ln, t, 1);
    const double p3 = poling_period(ln, t, 3);
    CHECK(p3 == doctest::Approx(3.0 * p1).epsilon(1e-14));
    CHECK(std::abs(delta_k(ln, Geometry::qpm(p1, 1), t)) < 1e-10);
    CHECK(std::abs(delta_k(ln, Geometry::qpm(p3, 3), t)) < 1e-10);
}

TEST_CASE("vanishing bulk mismatch has no finite grating") {
    // isotropic flat index: pump and photon momenta already balance
    CrystalRecord rec;
    rec.id = "ISO";
    rec.chemical_formula = "ISO";
    rec.optical_class = "isotropic";
    rec.point_group = "-43m";
    rec.transparency_um = {0.1, 100.0};
    DispersionAxis n;
    n.model.terms = {{Term::Kind::Const, 5.0625, 0.0}};
    n.model.valid_range_um = {0.1, 100.0};
    rec.dispersion.emplace("n", n);
    rec.interaction = {"qpm", {"n", "n", "n"}, {0.5, 5.0}, 1};
    CHECK_THROWS_AS((void)poling_period(rec, PhotonTriple::degenerate(2.0), 1), range_error);
}
