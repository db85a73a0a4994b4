#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spdc/optics.hpp"

namespace spdc {

// Gaussian pump envelope parameterized by the sigma-equivalent bandwidth
// Delta-lambda: sigma_omega = 2 pi c / lambda_p^2 * Delta-lambda, and
// exp(-((ws+wi-wp0)/sigma)^2 / 2). The intensity FWHM in wavelength is
// gaussian_intensity_fwhm * Delta-lambda.
struct PumpSpec {
    double center_um = 0.0;
    double bandwidth_um = 0.0;
};

struct JsaParams {
    double length_um = 0.0;
    PumpSpec pump;
    int grid = 200;                          // points per axis, minimum 16
    std::optional<Interval> span_signal_um;  // explicit axes; both or neither
    std::optional<Interval> span_idler_um;
};

// Real joint amplitude on wavelength axes, Frobenius-normalized.
// Rows follow signal_um, columns follow idler_um.
struct JsaGrid {
    std::string crystal_id;
    Geometry geometry;
    std::vector<double> signal_um;
    std::vector<double> idler_um;
    Eigen::MatrixXd amplitude;
    double length_um = 0.0;
    PumpSpec pump;
};

double pump_envelope(const PumpSpec& pump, double lam_s_um, double lam_i_um);

// sinc(delta_k * L); first amplitude zero where |delta_k| * L = pi.
double phase_matching_function(const CrystalRecord& rec, const Geometry& g,
                               double length_um, double lam_s_um, double lam_i_um);

// Axes default to a square window centered on 2*lambda_p: start at half the
// downconverted pump FWHM and grow 1.25x until the mean boundary intensity
// drops below 1e-4 of the peak, capped at 20 * (pump intensity FWHM) half
// width and at the transparency window. Explicit spans skip the search; any
// requested corner outside transparency is an error.
JsaGrid build_jsa(const CrystalRecord& rec, const Geometry& g, const JsaParams& p);

struct MarginalSet {
    Eigen::VectorXd signal; // intensity row sums over the idler axis
    Eigen::VectorXd idler;
    std::optional<double> fwhm_signal_um; // linear-interpolated half maximum
    std::optional<double> fwhm_idler_um;
    bool boundary_clipped = false; // a marginal peaks on the first/last sample
};

MarginalSet marginals(const JsaGrid& grid);

// Schmidt-mode weights p_k (normalized squared singular values, descending).
std::vector<double> schmidt_coefficients(const JsaGrid& grid);
// sum p_k^2
double schmidt_purity(const JsaGrid& grid);

// Desk-scale defaults keyed by GVM condition: crystal length and pump
// bandwidth used for survey purities and as CLI fallbacks.
//   1 -> 100 mm, 4 nm    2 -> 200 mm, 8 nm    3 -> 100 mm, 11 nm
struct JsaDefaults {
    double length_um;
    double pump_bandwidth_um;
};
JsaDefaults default_jsa_params(int condition);

} // namespace spdc
