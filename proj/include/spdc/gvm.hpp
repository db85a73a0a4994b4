#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spdc/deff.hpp"
#include "spdc/phasematch.hpp"

namespace spdc {

// Group-velocity matching conditions at degeneracy (ls = li = 2 lp):
//   1: 1/vp = 1/vs    2: 1/vp = 1/vi    3: 2/vp = 1/vs + 1/vi
// Residuals are inverse-group-velocity differences in fs/um; condition 3 is
// the exact sum of conditions 1 and 2.
double gvm_residual(const CrystalRecord& rec, const Geometry& g, const PhotonTriple& t,
                    int condition);

// Orientation of the phase-matching ridge in the (omega_s, omega_i) plane,
// theta = atan2(-(up - us), up - ui) mapped to [0, 180) degrees. When both
// walk-off terms vanish (|.| < 1e-12 fs/um) the angle is undefined; the flag
// is set and 0 is returned.
double ridge_angle_deg(const CrystalRecord& rec, const Geometry& g, const PhotonTriple& t,
                       bool* singular = nullptr);

struct GvmSolution {
    int condition = 0;
    PhotonTriple triple;       // degenerate solution point
    Geometry geometry;         // solved angle (BPM) or first-order-scaled grating (QPM)
    double theta_pmf_deg = 0.0;
    bool pmf_singular = false;
    DeffResult deff;
};

// Pump-wavelength scan (10 nm outer grid, bisection to |residual| < 1e-6
// fs/um) over the record's pump_search window. BPM records re-solve the
// phase-matching angle at every pump sample and track sign changes per root
// index; QPM records evaluate on principal axes and attach the poling period
// afterwards. Throws no_solution_error (with the residual extrema seen) when
// the condition is never crossed.
std::vector<GvmSolution> solve_gvm(const CrystalRecord& rec, int condition,
                                   double step_um = 0.01);
std::vector<GvmSolution> solve_gvm(const CrystalRecord& rec, int condition,
                                   double lo_um, double hi_um, double step_um = 0.01);

// Dense (pump, signal) map of first-order poling period and ridge angle on
// principal axes. Cells whose idler leaves the transparency window (or whose
// signal exceeds the pump photon energy) are NaN.
struct PmMap {
    std::vector<double> pump_um;
    std::vector<double> signal_um;
    Eigen::MatrixXd period_um; // rows follow pump_um, cols follow signal_um
    Eigen::MatrixXd theta_deg;
};

PmMap pm_map(const CrystalRecord& rec, double pump_lo_um, double pump_hi_um,
             double signal_lo_um, double signal_hi_um, int n_pump, int n_signal);

} // namespace spdc
