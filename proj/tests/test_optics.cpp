#include <doctest.h>

#include <cmath>

#include "spdc/errors.hpp"
#include "spdc/optics.hpp"
#include "spdc/registry.hpp"
#include "spdc/units.hpp"

using namespace spdc;

namespace {
const Registry& reg() {
    static Registry r = Registry::load("data/registry/crystals.json");
    return r;
}
} // namespace

TEST_CASE("extraordinary wave interpolates between the principal indices") {
    const auto& ags = reg().find("AGS");
    const double lam = 2.1;
    const double no = index_at(ags, Geometry::bpm_uniaxial(0.3), "o", lam);
    const double ne_axis = ags.refractive_index("e", lam);

    CHECK(index_at(ags, Geometry::bpm_uniaxial(0.0), "e", lam) ==
          doctest::Approx(no).epsilon(1e-14));
    CHECK(index_at(ags, Geometry::bpm_uniaxial(deg2rad(90.0)), "e", lam) ==
          doctest::Approx(ne_axis).epsilon(1e-14));

    // negative uniaxial: n_e(theta) decreases monotonically from n_o to n_e
    double prev = no;
    for (double th = 10.0; th <= 90.0; th += 10.0) {
        const double n = index_at(ags, Geometry::bpm_uniaxial(deg2rad(th)), "e", lam);
        CHECK(n < prev + 1e-15);
        CHECK(n >= ne_axis - 1e-15);
        prev = n;
    }
}

TEST_CASE("xy-plane wave hits the principal axes at 0 and 90 degrees") {
    const auto& lise = reg().find("LISe");
    const double lam = 3.0;
    const double nx = lise.refractive_index("x", lam);
    const double ny = lise.refractive_index("y", lam);
    CHECK(index_at(lise, Geometry::bpm_plane("xy", 0.0), "xy", lam) ==
          doctest::Approx(ny).epsilon(1e-14));
    CHECK(index_at(lise, Geometry::bpm_plane("xy", deg2rad(90.0)), "xy", lam) ==
          doctest::Approx(nx).epsilon(1e-14));
    // the plane's normal axis is angle-independent
    CHECK(index_at(lise, Geometry::bpm_plane("xy", deg2rad(37.0)), "z", lam) ==
          doctest::Approx(lise.refractive_index("z", lam)).epsilon(1e-14));
}

TEST_CASE("in-plane branch label must match the geometry plane") {
    const auto& lise = reg().find("LISe");
    CHECK_THROWS_AS((void)index_at(lise, Geometry::bpm_plane("xy", 0.2), "xz", 3.0),
                    geometry_error);
}

TEST_CASE("mixed-branch dn/dlam matches finite differences") {
    const double h = 1e-6;
    SUBCASE("uniaxial e-wave at an oblique angle") {
        const auto& ags = reg().find("AGS");
        const auto g = Geometry::bpm_uniaxial(deg2rad(53.7));
        for (double lam : {1.7, 2.4, 3.4}) {
            const double fd =
                (index_at(ags, g, "e", lam + h) - index_at(ags, g, "e", lam - h)) / (2.0 * h);
            CHECK(dn_dlam_at(ags, g, "e", lam) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
    SUBCASE("biaxial in-plane wave") {
        const auto& lgse = reg().find("LGSe");
        const auto g = Geometry::bpm_plane("xy", deg2rad(47.5));
        for (double lam : {2.7, 5.5}) {
            const double fd =
                (index_at(lgse, g, "xy", lam + h) - index_at(lgse, g, "xy", lam - h)) /
                (2.0 * h);
            CHECK(dn_dlam_at(lgse, g, "xy", lam) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("KTP pump and idler y-axis group indices coincide at its matched pair") {
    const auto& ktp = reg().find("KTP");
    const Geometry g = Geometry::qpm(72.2, 1);
    const double pump = group_index_at(ktp, g, "y", 1.169);
    const double idler = group_index_at(ktp, g, "y", 2.338);
    CHECK(std::abs(pump - idler) < 1e-4);
}

TEST_CASE("inverse group velocity is group index over c") {
    const auto& ln = reg().find("LN");
    const Geometry g = Geometry::qpm(14.8, 1);
    const double ng = group_index_at(ln, g, "e", 2.7);
    CHECK(inv_group_velocity(ln, g, "e", 2.7) ==
          doctest::Approx(ng / c_um_fs).epsilon(1e-15));
}
