#include <doctest.h>

#include <cmath>

#include "spdc/deff.hpp"
#include "spdc/errors.hpp"
#include "spdc/registry.hpp"
#include "spdc/units.hpp"

using namespace spdc;

namespace {
const Registry& reg() {
    static Registry r = Registry::load("data/registry/crystals.json");
    return r;
}

const NonlinearEntry& entry_of(const CrystalRecord& rec, const std::string& label) {
    for (const auto& e : rec.d_entries)
        if (e.tensor_label == label) return e;
    throw error("test setup: no entry " + label);
}
} // namespace

TEST_CASE("crystals without usable tensor data report unknown") {
    for (const char* id : {"THI", "LT", "KN", "LiIO3", "PMN-0.38PT"}) {
        const auto& rec = reg().find(id);
        Geometry g = rec.interaction.kind == "qpm" ? Geometry::qpm(100.0, 1)
                                                   : Geometry::bpm_uniaxial(deg2rad(30.0));
        const auto d = d_eff(rec, g, {1.5, 3.0, 3.0});
        CHECK_FALSE(d.known);
    }
}

TEST_CASE("grating interactions at the tensor measurement point reduce to 2/pi") {
    // Miller scaling is exactly 1 when evaluated on the measurement's own
    // second-harmonic triple, leaving only the first-order grating factor.
    const auto& ln = reg().find("LN");
    const auto& e = entry_of(ln, "d31");
    const double lm = e.measurement_um;
    const auto d = d_eff(ln, Geometry::qpm(15.0, 1), {lm / 2.0, lm, lm});
    REQUIRE(d.known);
    CHECK(d.value_pm_v ==
          doctest::Approx(2.0 / pi * std::abs(e.magnitude_pm_v)).epsilon(1e-12));
}

TEST_CASE("third-order gratings carry one third of the first-order coupling") {
    const auto& bto = reg().find("BaTiO3");
    const std::array<double, 3> lams{1.518, 3.036, 3.036};
    const auto d1 = d_eff(bto, Geometry::qpm(23.28, 1), lams);
    const auto d3 = d_eff(bto, Geometry::qpm(3.0 * 23.28, 3), lams);
    REQUIRE(d1.known);
    REQUIRE(d3.known);
    CHECK(d3.value_pm_v == doctest::Approx(d1.value_pm_v / 3.0).epsilon(1e-12));
}

TEST_CASE("Kleinman symmetry lets d24 serve the (y,z,y) interaction") {
    const auto& ktp = reg().find("KTP");
    const auto d = d_eff(ktp, Geometry::qpm(72.2, 1), {1.169, 2.338, 2.338});
    REQUIRE(d.known);
    CHECK(d.value_pm_v > 0.0);
    CHECK(d.detail.find("d24") != std::string::npos);
}

TEST_CASE("one-e-wave uniaxial coupling scales as sin theta") {
    const auto& ags = reg().find("AGS");
    const std::array<double, 3> lams{1.688, 3.376, 3.376};
    const auto d90 = d_eff(ags, Geometry::bpm_uniaxial(deg2rad(90.0)), lams);
    const auto d30 = d_eff(ags, Geometry::bpm_uniaxial(deg2rad(30.0)), lams);
    REQUIRE(d90.known);
    REQUIRE(d30.known);
    CHECK(d90.value_pm_v == doctest::Approx(2.0 * d30.value_pm_v).epsilon(1e-12));
}

TEST_CASE("xy-plane mm2 coupling moves between d32 and d31 with azimuth") {
    const auto& lgse = reg().find("LGSe");
    const std::array<double, 3> lams{2.729, 5.458, 5.458};
    const auto at0 = d_eff(lgse, Geometry::bpm_plane("xy", 0.0), lams);
    const auto at90 = d_eff(lgse, Geometry::bpm_plane("xy", deg2rad(90.0)), lams);
    REQUIRE(at0.known);
    REQUIRE(at90.known);
    const double d31 = std::abs(entry_of(lgse, "d31").magnitude_pm_v);
    const double d32 = std::abs(entry_of(lgse, "d32").magnitude_pm_v);
    CHECK(at0.value_pm_v / at90.value_pm_v == doctest::Approx(d32 / d31).epsilon(1e-12));
}

TEST_CASE("isotropic gratings use the largest tensor entry") {
    // regression pin for the shipped conventions: largest entry (53.8 pm/V at
    // 0.852 um), per-field Miller scaling to the operating point, 2/pi
    const auto& zn = reg().find("OP-ZnSe");
    const auto d = d_eff(zn, Geometry::qpm(262.4, 1), {3.3888, 6.7776, 6.7776});
    REQUIRE(d.known);
    CHECK(d.value_pm_v == doctest::Approx(23.34).epsilon(2e-3));
}

TEST_CASE("unsupported point groups raise a geometry error") {
    CrystalRecord rec = reg().find("AGS");
    rec.point_group = "23";
    CHECK_THROWS_AS((void)d_eff(rec, Geometry::bpm_uniaxial(0.5), {1.7, 3.4, 3.4}),
                    geometry_error);
}
