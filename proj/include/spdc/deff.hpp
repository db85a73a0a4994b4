#pragma once

#include <array>
#include <string>

#include "spdc/optics.hpp"

namespace spdc {

// Scalar effective nonlinear coefficient for the record's interaction at the
// given geometry and (pump, signal, idler) wavelengths.
//
// Conventions (documented in README):
//  - standard Kleinman point-group formula tables, walk-off neglected;
//    uniaxial azimuth chosen to maximize |d_eff| (the tables' phi is free);
//  - Miller's-rule scaling per field: each tensor entry measured at lam_m
//    (SHG partners lam_m/2, lam_m, lam_m) is rescaled by the chi = n^2 - 1
//    ratios evaluated on each field's own branch at its own wavelength;
//    wavelengths outside an axis model's validity window clamp to its edge;
//  - QPM multiplies by 2/(m*pi) for grating order m;
//  - a missing tensor entry or an identically zero coupling yields
//    known = false ("unknown", mirroring the data tables), never a throw;
//  - an unrecognized point group throws geometry_error.
struct DeffResult {
    bool known = false;
    double value_pm_v = 0.0; // magnitude
    std::string detail;      // entries used, or why unknown
};

DeffResult d_eff(const CrystalRecord& rec, const Geometry& g,
                 const std::array<double, 3>& lams_um);

} // namespace spdc
