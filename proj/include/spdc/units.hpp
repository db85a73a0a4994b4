#pragma once

// Canonical internal units: micrometers, femtoseconds, rad/fs.
// Angles are radians internally; degrees only at CLI/report boundaries.

namespace spdc {

inline constexpr double c_um_fs = 0.299792458;          // speed of light [um/fs]
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double two_pi_c = two_pi * c_um_fs;    // omega = two_pi_c / lambda

inline double deg2rad(double d) { return d * pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / pi; }

// Gaussian intensity FWHM per unit of the exp(-x^2/2) sigma parameter:
// |exp(-x^2/2)|^2 halves at x = sqrt(ln 2), so FWHM = 2*sqrt(ln 2) ~ 1.665.
inline constexpr double gaussian_intensity_fwhm = 1.6651092223153954;

} // namespace spdc
