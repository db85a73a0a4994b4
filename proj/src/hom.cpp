#include "spdc/hom.hpp"

#include <algorithm>
#include <cmath>

#include "spdc/errors.hpp"
#include "spdc/units.hpp"

namespace spdc {

namespace {

void require_square(const JsaGrid& g) {
    if (g.amplitude.rows() != g.amplitude.cols() ||
        g.signal_um.size() != g.idler_um.size())
        throw validation_error("interference needs a square grid with identical axes");
    for (std::size_t i = 0; i < g.signal_um.size(); ++i)
        if (std::abs(g.signal_um[i] - g.idler_um[i]) > 1e-12)
            throw validation_error("interference needs identical signal and idler axes");
}

void require_same_axes(const JsaGrid& a, const JsaGrid& b) {
    if (a.signal_um.size() != b.signal_um.size())
        throw validation_error("the two sources must share their wavelength axes");
    for (std::size_t i = 0; i < a.signal_um.size(); ++i)
        if (std::abs(a.signal_um[i] - b.signal_um[i]) > 1e-12 ||
            std::abs(a.idler_um[i] - b.idler_um[i]) > 1e-12)
            throw validation_error("the two sources must share their wavelength axes");
}

// amplitude converted to frequency quadrature and unit L2 norm
Eigen::MatrixXd weight_normalized(const JsaGrid& g) {
    const auto& ls = g.signal_um;
    const int n = static_cast<int>(ls.size());
    const double dl = std::abs(ls[1] - ls[0]);
    Eigen::VectorXd sw(n);
    for (int i = 0; i < n; ++i) sw[i] = std::sqrt(two_pi_c / (ls[i] * ls[i]) * dl);
    Eigen::MatrixXd w = sw.asDiagonal() * g.amplitude * sw.asDiagonal();
    const double norm = w.norm();
    if (!(norm > 0.0)) throw validation_error("amplitude vanishes on the whole grid");
    return w / norm;
}

Eigen::VectorXd omega_axis(const std::vector<double>& lam) {
    Eigen::VectorXd w(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) w[i] = two_pi_c / lam[i];
    return w;
}

void extract_dip(HomTrace& t) {
    const auto& tau = t.delay_fs;
    const auto& p = t.probability;
    const int n = static_cast<int>(p.size());
    const int k = std::max(1, static_cast<int>(std::lround(0.05 * n)));
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc += p[i] + p[n - 1 - i];
    t.plateau = acc / (2.0 * k);

    int m = static_cast<int>(std::min_element(p.begin(), p.end()) - p.begin());
    t.delay_at_minimum_fs = tau[m];
    t.minimum = p[m];
    if (m > 0 && m < n - 1) {
        const double y0 = p[m - 1], y1 = p[m], y2 = p[m + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        if (denom > 0.0) {
            const double dt = 0.5 * (y0 - y2) / denom;
            t.minimum = y1 - 0.25 * (y0 - y2) * dt;
            t.delay_at_minimum_fs = tau[m] + dt * (tau[m + 1] - tau[m]);
        }
    }
    t.visibility = t.plateau > 0.0 ? (t.plateau - t.minimum) / t.plateau : 0.0;

    const double level = 0.5 * (t.plateau + t.minimum);
    std::optional<double> lo, hi;
    for (int i = m; i > 0; --i) {
        if (p[i] < level && level <= p[i - 1]) {
            lo = tau[i - 1] + (tau[i] - tau[i - 1]) * (level - p[i - 1]) / (p[i] - p[i - 1]);
            break;
        }
    }
    for (int i = m; i < n - 1; ++i) {
        if (p[i] < level && level <= p[i + 1]) {
            hi = tau[i] + (tau[i + 1] - tau[i]) * (level - p[i]) / (p[i + 1] - p[i]);
            break;
        }
    }
    if (lo && hi) t.fwhm_fs = *hi - *lo;
}

std::vector<double> delays_from_bandwidth(const JsaGrid& grid, bool idler_side, int n) {
    if (n < 3) throw validation_error("a delay grid needs at least 3 samples");
    const MarginalSet m = marginals(grid);
    const auto f = idler_side ? m.fwhm_idler_um : m.fwhm_signal_um;
    if (!f)
        throw validation_error("marginal bandwidth undefined on this grid; "
                               "pass delays explicitly");
    const auto& ls = grid.signal_um;
    const double lam0 = 0.5 * (ls.front() + ls.back());
    const double dw = two_pi_c / (lam0 * lam0) * *f;
    double span = 5.0 * (two_pi / dw);

    const Eigen::VectorXd w = omega_axis(ls);
    double step = 0.0;
    for (int i = 0; i + 1 < w.size(); ++i) step += std::abs(w[i + 1] - w[i]);
    step /= static_cast<double>(w.size() - 1);
    span = std::min(span, 0.45 * two_pi / step);

    std::vector<double> tau(n);
    for (int i = 0; i < n; ++i) tau[i] = -span + 2.0 * span * i / (n - 1);
    return tau;
}

} // namespace

HomTrace two_fold_trace(const JsaGrid& grid, const std::vector<double>& delay_fs) {
    require_square(grid);
    if (delay_fs.size() < 3) throw validation_error("a delay grid needs at least 3 samples");
    const Eigen::MatrixXd g = weight_normalized(grid);
    const Eigen::MatrixXd b = g.cwiseProduct(g.transpose());
    const Eigen::VectorXd w = omega_axis(grid.signal_um);
    const int n = static_cast<int>(w.size());

    HomTrace t;
    t.delay_fs = delay_fs;
    t.probability.resize(delay_fs.size());
    for (std::size_t d = 0; d < delay_fs.size(); ++d) {
        const double tau = delay_fs[d];
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += b(i, j) * std::cos((w[i] - w[j]) * tau);
        t.probability[d] = 0.5 - 0.5 * s;
    }
    extract_dip(t);
    return t;
}

HomTrace four_fold_trace(const JsaGrid& a, const JsaGrid& b,
                         const std::vector<double>& delay_fs, Interfering which) {
    require_square(a);
    require_square(b);
    require_same_axes(a, b);
    if (delay_fs.size() < 3) throw validation_error("a delay grid needs at least 3 samples");

    Eigen::MatrixXd g1 = weight_normalized(a);
    Eigen::MatrixXd g2 = weight_normalized(b);
    if (which == Interfering::Idlers) {
        g1.transposeInPlace();
        g2.transposeInPlace();
    }
    // Gram over the heralding axis
    const Eigen::MatrixXd m1 = g1 * g1.transpose();
    const Eigen::MatrixXd m2 = g2 * g2.transpose();
    const Eigen::MatrixXd k = m1.cwiseProduct(m2.transpose());
    const Eigen::VectorXd w = omega_axis(a.signal_um);
    const int n = static_cast<int>(w.size());

    HomTrace t;
    t.delay_fs = delay_fs;
    t.probability.resize(delay_fs.size());
    for (std::size_t d = 0; d < delay_fs.size(); ++d) {
        const double tau = delay_fs[d];
        double s = 0.0;
        for (int ia = 0; ia < n; ++ia)
            for (int ib = 0; ib < n; ++ib) s += k(ia, ib) * std::cos((w[ib] - w[ia]) * tau);
        t.probability[d] = 0.5 - 0.5 * s;
    }
    extract_dip(t);
    return t;
}

std::vector<double> default_delays(const JsaGrid& grid, Interfering which, int n) {
    return delays_from_bandwidth(grid, which == Interfering::Idlers, n);
}

std::vector<double> default_delays_two_fold(const JsaGrid& grid, int n) {
    return delays_from_bandwidth(grid, false, n);
}

} // namespace spdc
