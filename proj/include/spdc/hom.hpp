#pragma once

#include <optional>
#include <vector>

#include "spdc/jsa.hpp"

namespace spdc {

// Which photons of the two pair sources meet at the beamsplitter in the
// four-fold arrangement; the other two herald.
enum class Interfering { Signals, Idlers };

struct HomTrace {
    std::vector<double> delay_fs;
    std::vector<double> probability;       // even in the delay, within [0, 1/2]
    double plateau = 0.0;                  // mean of the outer 10% of samples
    double minimum = 0.0;                  // parabolic refinement through 3 points
    double delay_at_minimum_fs = 0.0;
    double visibility = 0.0;               // (plateau - minimum) / plateau
    std::optional<double> fwhm_fs;         // width at (plateau + minimum) / 2;
                                           // absent when no dip exists
};

// Coincidence probability after a balanced beamsplitter for one pair,
// P(tau) = 1/2 - 1/2 sum_jk g_j,k g_k,j cos((w_j - w_k) tau), where g is the
// amplitude times the sqrt of the frequency quadrature weights 2 pi c /
// lambda^2 * dlambda, renormalized. Requires a square grid with identical
// axes.
HomTrace two_fold_trace(const JsaGrid& grid, const std::vector<double>& delay_fs);

// Four-fold coincidence for two pair sources whose interfering photons meet
// at the beamsplitter while both partners herald: with Gram matrices M over
// the heralding axis, P(tau) = 1/2 - 1/2 sum_ab M1_ab M2_ba cos((w_b - w_a)
// tau). Both grids must share axes.
HomTrace four_fold_trace(const JsaGrid& a, const JsaGrid& b,
                         const std::vector<double>& delay_fs, Interfering which);

// Symmetric delay grid: half span 5x the inverse marginal bandwidth of the
// interfering photon (2 pi / delta-omega), clamped to 0.45x the grid
// recurrence time 2 pi / mean omega spacing so the sampled comb cannot
// alias.
std::vector<double> default_delays(const JsaGrid& grid, Interfering which, int n = 201);
std::vector<double> default_delays_two_fold(const JsaGrid& grid, int n = 201);

} // namespace spdc
