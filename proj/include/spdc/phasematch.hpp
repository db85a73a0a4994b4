#pragma once

#include <vector>

#include "spdc/optics.hpp"

namespace spdc {

// (pump, signal, idler) wavelengths tied by energy conservation
// 1/lp = 1/ls + 1/li. Signal/idler identity follows the interaction's
// polarization labels, not a wavelength ordering.
struct PhotonTriple {
    double pump_um = 0.0;
    double signal_um = 0.0;
    double idler_um = 0.0;

    static PhotonTriple degenerate(double pump_um) {
        return {pump_um, 2.0 * pump_um, 2.0 * pump_um};
    }
    // idler from energy conservation; range_error if 1/lp >= 1/ls fails
    static PhotonTriple from_pump_signal(double pump_um, double signal_um);

    double energy_residual_per_um() const {
        return 1.0 / pump_um - 1.0 / signal_um - 1.0 / idler_um;
    }
};

// Wave-vector mismatch k_p - k_s - k_i (- 2 pi m / Lambda under QPM), rad/um.
// Branches come from the record's interaction pols resolved at the geometry.
double delta_k(const CrystalRecord& rec, const Geometry& g, const PhotonTriple& t);

// All angles in [0, pi/2] where delta_k = 0, ascending. 0.1 deg bracketing
// scan + bisection to |delta_k| < 1e-8 rad/um. Uniaxial records scan theta;
// biaxial records scan the in-plane angle of `plane`. Throws
// no_solution_error (carrying the delta_k extrema) if no sign change.
std::vector<double> solve_bpm_angle(const CrystalRecord& rec, const PhotonTriple& t,
                                    const std::string& plane = "xy");

// Lambda = 2 pi m / |k_p - k_s - k_i| on the principal QPM axes.
// Zero mismatch -> range_error (degenerate grating).
double poling_period(const CrystalRecord& rec, const PhotonTriple& t, int order = 1);

} // namespace spdc
