#pragma once

#include <string>

#include "spdc/registry.hpp"
#include "spdc/units.hpp"

namespace spdc {

// Propagation geometry. BPM tunes an angle; QPM propagates along a principal
// direction and compensates mismatch with a poling grating.
struct Geometry {
    enum class Kind { BpmUniaxial, BpmBiaxialPlane, Qpm };
    Kind kind = Geometry::Kind::Qpm;
    double theta_rad = 0.0;      // uniaxial polar angle from the optic axis
    double phi_rad = 0.0;        // biaxial in-plane azimuth
    std::string plane = "xy";    // biaxial principal plane: xy | xz | yz
    double period_um = 0.0;      // QPM poling period
    int qpm_order = 1;

    static Geometry bpm_uniaxial(double theta_rad);
    static Geometry bpm_plane(const std::string& plane, double angle_rad);
    static Geometry qpm(double period_um, int order = 1);

    double angle() const { return kind == Kind::BpmUniaxial ? theta_rad : phi_rad; }
};

// Branch labels come from the registry interaction pols:
//   principal axes "o","e","x","y","z","n" (QPM and fixed branches), and the
//   angle-dependent branches: "e" under BPM-uniaxial (index ellipse at theta)
//   and "xy"/"xz"/"yz" (in-plane wave of that principal plane at the plane
//   angle). The plane's normal branch is the remaining principal axis label.
// These evaluate the raw dispersion models; wavelength-domain checks belong
// to callers (transparency for grids, search windows for solvers).
double index_at(const CrystalRecord& rec, const Geometry& g, const std::string& branch,
                double lam_um);
double dn_dlam_at(const CrystalRecord& rec, const Geometry& g, const std::string& branch,
                  double lam_um);
double group_index_at(const CrystalRecord& rec, const Geometry& g, const std::string& branch,
                      double lam_um);

// 1/v_g in fs/um
inline double inv_group_velocity(const CrystalRecord& rec, const Geometry& g,
                                 const std::string& branch, double lam_um) {
    return group_index_at(rec, g, branch, lam_um) / c_um_fs;
}

} // namespace spdc
