#include "spdc/optics.hpp"

#include <cmath>

namespace spdc {

Geometry Geometry::bpm_uniaxial(double theta_rad) {
    Geometry g;
    g.kind = Kind::BpmUniaxial;
    g.theta_rad = theta_rad;
    return g;
}

Geometry Geometry::bpm_plane(const std::string& plane, double angle_rad) {
    if (plane != "xy" && plane != "xz" && plane != "yz")
        throw geometry_error("unknown principal plane '" + plane + "'");
    Geometry g;
    g.kind = Kind::BpmBiaxialPlane;
    g.plane = plane;
    g.phi_rad = angle_rad;
    return g;
}

Geometry Geometry::qpm(double period_um, int order) {
    Geometry g;
    g.kind = Kind::Qpm;
    g.period_um = period_um;
    g.qpm_order = order;
    return g;
}

namespace {

// An angle-mixed branch combines two principal axes on the index ellipse:
// 1/n^2 = wa/na^2 + wb/nb^2.
struct Mix {
    const DispersionModel* a;
    const DispersionModel* b;
    double wa, wb;
};

// In-plane polarization of a principal plane: at angle 0 the wave is
// polarized along the plane's second-named axis (propagation along the
// first), so e.g. the xy in-plane branch sees n_y at phi = 0 and n_x at 90.
Mix plane_mix(const CrystalRecord& rec, const std::string& plane, double ang) {
    const double c2 = std::cos(ang) * std::cos(ang);
    const double s2 = 1.0 - c2;
    if (plane == "xy")
        return {&rec.axis("y").model, &rec.axis("x").model, c2, s2};
    if (plane == "xz")
        return {&rec.axis("x").model, &rec.axis("z").model, c2, s2};
    if (plane == "yz")
        return {&rec.axis("y").model, &rec.axis("z").model, c2, s2};
    throw geometry_error("unknown principal plane '" + plane + "'");
}

bool is_plane_label(const std::string& b) { return b == "xy" || b == "xz" || b == "yz"; }

// nullptr means the branch is angle-mixed (fills mix instead)
const DispersionModel* resolve(const CrystalRecord& rec, const Geometry& g,
                               const std::string& branch, Mix& mix) {
    if (branch == "e" && g.kind == Geometry::Kind::BpmUniaxial) {
        const double c2 = std::cos(g.theta_rad) * std::cos(g.theta_rad);
        mix = {&rec.axis("o").model, &rec.axis("e").model, c2, 1.0 - c2};
        return nullptr;
    }
    if (is_plane_label(branch)) {
        if (g.kind != Geometry::Kind::BpmBiaxialPlane || g.plane != branch)
            throw geometry_error(rec.id + ": in-plane branch '" + branch +
                                 "' needs a matching biaxial plane geometry");
        mix = plane_mix(rec, branch, g.phi_rad);
        return nullptr;
    }
    return &rec.axis(branch).model; // throws geometry_error if absent
}

} // namespace

double index_at(const CrystalRecord& rec, const Geometry& g, const std::string& branch,
                double lam_um) {
    Mix mix{};
    if (const DispersionModel* m = resolve(rec, g, branch, mix))
        return m->n(lam_um);
    return 1.0 / std::sqrt(mix.wa / mix.a->n2(lam_um) + mix.wb / mix.b->n2(lam_um));
}

double dn_dlam_at(const CrystalRecord& rec, const Geometry& g, const std::string& branch,
                  double lam_um) {
    Mix mix{};
    if (const DispersionModel* m = resolve(rec, g, branch, mix))
        return m->dn_dlam(lam_um);
    // n(lam) = [wa/na^2 + wb/nb^2]^(-1/2) at fixed angle;
    // dn/dlam = -n^3/2 * d(1/n^2)/dlam with d(1/na^2) = -na^-4 * dna^2.
    const double na2 = mix.a->n2(lam_um), nb2 = mix.b->n2(lam_um);
    const double inv2 = mix.wa / na2 + mix.wb / nb2;
    const double dinv2 =
        -mix.wa * mix.a->dn2_dlam(lam_um) / (na2 * na2) -
         mix.wb * mix.b->dn2_dlam(lam_um) / (nb2 * nb2);
    const double n = 1.0 / std::sqrt(inv2);
    return -0.5 * n * n * n * dinv2;
}

double group_index_at(const CrystalRecord& rec, const Geometry& g, const std::string& branch,
                      double lam_um) {
    return index_at(rec, g, branch, lam_um) - lam_um * dn_dlam_at(rec, g, branch, lam_um);
}

} // namespace spdc
