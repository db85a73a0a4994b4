#include "spdc/jsa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spdc/errors.hpp"
#include "spdc/units.hpp"

namespace spdc {

double pump_envelope(const PumpSpec& pump, double lam_s_um, double lam_i_um) {
    if (!(pump.center_um > 0.0) || !(pump.bandwidth_um > 0.0))
        throw validation_error("pump center and bandwidth must be positive");
    const double sig = two_pi_c / (pump.center_um * pump.center_um) * pump.bandwidth_um;
    const double wp0 = two_pi_c / pump.center_um;
    const double ws = two_pi_c / lam_s_um;
    const double wi = two_pi_c / lam_i_um;
    const double u = (ws + wi - wp0) / sig;
    return std::exp(-0.5 * u * u);
}

namespace {

inline double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

} // namespace

double phase_matching_function(const CrystalRecord& rec, const Geometry& g,
                               double length_um, double lam_s_um, double lam_i_um) {
    if (!(length_um > 0.0)) throw validation_error("crystal length must be positive");
    const double lp = 1.0 / (1.0 / lam_s_um + 1.0 / lam_i_um);
    const auto& pols = rec.interaction.pols;
    double dk = two_pi * (index_at(rec, g, pols[0], lp) / lp -
                          index_at(rec, g, pols[1], lam_s_um) / lam_s_um -
                          index_at(rec, g, pols[2], lam_i_um) / lam_i_um);
    if (g.kind == Geometry::Kind::Qpm)
        dk -= two_pi * static_cast<double>(g.qpm_order) / g.period_um;
    return sinc(dk * length_um);
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

Eigen::MatrixXd amplitude_on(const CrystalRecord& rec, const Geometry& g, double length_um,
                             const PumpSpec& pump, const std::vector<double>& ls,
                             const std::vector<double>& li) {
    const int ns = static_cast<int>(ls.size());
    const int ni = static_cast<int>(li.size());
    Eigen::MatrixXd a(ns, ni);
    const double sig = two_pi_c / (pump.center_um * pump.center_um) * pump.bandwidth_um;
    const double wp0 = two_pi_c / pump.center_um;
    const auto& pols = rec.interaction.pols;

    // per-axis index caches; the pump column depends on both axes
    std::vector<double> ks(ns), ws(ns);
    for (int i = 0; i < ns; ++i) {
        ks[i] = index_at(rec, g, pols[1], ls[i]) / ls[i];
        ws[i] = two_pi_c / ls[i];
    }
    std::vector<double> ki(ni), wi(ni);
    for (int j = 0; j < ni; ++j) {
        ki[j] = index_at(rec, g, pols[2], li[j]) / li[j];
        wi[j] = two_pi_c / li[j];
    }
    const double grating = g.kind == Geometry::Kind::Qpm
                               ? two_pi * static_cast<double>(g.qpm_order) / g.period_um
                               : 0.0;
    for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < ni; ++j) {
            const double lp = 1.0 / (1.0 / ls[i] + 1.0 / li[j]);
            const double dk =
                two_pi * (index_at(rec, g, pols[0], lp) / lp - ks[i] - ki[j]) - grating;
            const double u = (ws[i] + wi[j] - wp0) / sig;
            a(i, j) = std::exp(-0.5 * u * u) * sinc(dk * length_um);
        }
    }
    return a;
}

void check_corners(const CrystalRecord& rec, const Interval& s, const Interval& i) {
    for (double a : {s.lo, s.hi}) {
        for (double b : {i.lo, i.hi}) {
            if (!rec.transparent(a) || !rec.transparent(b)) {
                std::ostringstream os;
                os << "grid corner (" << a << ", " << b << ") um leaves the " << rec.id
                   << " transparency window [" << rec.transparency_um.lo << ", "
                   << rec.transparency_um.hi << "] um";
                throw range_error(os.str());
            }
        }
    }
}

} // namespace

JsaGrid build_jsa(const CrystalRecord& rec, const Geometry& g, const JsaParams& p) {
    if (p.grid < 16) throw validation_error("grid must be at least 16 points per axis");
    if (!(p.length_um > 0.0)) throw validation_error("crystal length must be positive");
    if (!(p.pump.center_um > 0.0) || !(p.pump.bandwidth_um > 0.0))
        throw validation_error("pump center and bandwidth must be positive");
    if (p.span_signal_um.has_value() != p.span_idler_um.has_value())
        throw validation_error("explicit spans must be given for both axes or neither");

    JsaGrid out;
    out.crystal_id = rec.id;
    out.geometry = g;
    out.length_um = p.length_um;
    out.pump = p.pump;

    if (p.span_signal_um) {
        const Interval s = *p.span_signal_um;
        const Interval i = *p.span_idler_um;
        if (!(s.hi > s.lo) || !(i.hi > i.lo))
            throw validation_error("explicit spans must be increasing intervals");
        check_corners(rec, s, i);
        out.signal_um = linspace(s.lo, s.hi, p.grid);
        out.idler_um = linspace(i.lo, i.hi, p.grid);
        out.amplitude = amplitude_on(rec, g, p.length_um, p.pump, out.signal_um, out.idler_um);
    } else {
        const double lam0 = 2.0 * p.pump.center_um;
        if (!rec.transparent(lam0)) {
            std::ostringstream os;
            os << "degenerate wavelength " << lam0 << " um leaves the " << rec.id
               << " transparency window";
            throw range_error(os.str());
        }
        const double fwhm_dc = 2.0 * std::sqrt(std::log(2.0)) * p.pump.bandwidth_um *
                               (lam0 / p.pump.center_um) * (lam0 / p.pump.center_um);
        double w_cap = 20.0 * gaussian_intensity_fwhm * p.pump.bandwidth_um;
        w_cap = std::min({w_cap, lam0 - rec.transparency_um.lo, rec.transparency_um.hi - lam0});
        if (!(w_cap > 0.0))
            throw range_error("degenerate wavelength sits on the transparency edge; "
                              "pass explicit spans");

        double w = 0.5 * fwhm_dc;
        for (int pass = 0; pass < 60; ++pass) {
            if (w > w_cap) w = w_cap;
            out.signal_um = linspace(lam0 - w, lam0 + w, p.grid);
            out.idler_um = out.signal_um;
            out.amplitude =
                amplitude_on(rec, g, p.length_um, p.pump, out.signal_um, out.idler_um);
            const Eigen::ArrayXXd jsi = out.amplitude.array().square();
            const int n = p.grid;
            const double rim = (jsi.row(0).mean() + jsi.row(n - 1).mean() +
                                jsi.col(0).mean() + jsi.col(n - 1).mean()) /
                               4.0;
            if (rim < 1e-4 * jsi.maxCoeff() || w >= w_cap) break;
            w *= 1.25;
        }
    }

    const double norm = out.amplitude.norm();
    if (!(norm > 0.0))
        throw validation_error("joint amplitude vanishes on the whole grid");
    if (!std::isfinite(norm))
        throw validation_error("joint amplitude is not finite on the grid");
    out.amplitude /= norm;
    return out;
}

namespace {

// half-maximum width by linear interpolation around the peak sample
std::pair<std::optional<double>, bool> fwhm_linear(const std::vector<double>& x,
                                                   const Eigen::VectorXd& y) {
    int m = 0;
    y.maxCoeff(&m);
    const int n = static_cast<int>(y.size());
    const bool clipped = m == 0 || m == n - 1;
    const double half = y[m] / 2.0;
    std::optional<double> lo, hi;
    for (int i = m; i > 0; --i) {
        if (y[i - 1] < half && half <= y[i]) {
            lo = x[i - 1] + (x[i] - x[i - 1]) * (half - y[i - 1]) / (y[i] - y[i - 1]);
            break;
        }
    }
    for (int i = m; i < n - 1; ++i) {
        if (y[i + 1] < half && half <= y[i]) {
            hi = x[i] + (x[i + 1] - x[i]) * (half - y[i]) / (y[i + 1] - y[i]);
            break;
        }
    }
    if (!lo || !hi) return {std::nullopt, true};
    return {*hi - *lo, clipped};
}

} // namespace

MarginalSet marginals(const JsaGrid& grid) {
    MarginalSet m;
    const Eigen::ArrayXXd jsi = grid.amplitude.array().square();
    m.signal = jsi.rowwise().sum();
    m.idler = jsi.colwise().sum().transpose();
    auto [fs, cs] = fwhm_linear(grid.signal_um, m.signal);
    auto [fi, ci] = fwhm_linear(grid.idler_um, m.idler);
    m.fwhm_signal_um = fs;
    m.fwhm_idler_um = fi;
    m.boundary_clipped = cs || ci;
    return m;
}

std::vector<double> schmidt_coefficients(const JsaGrid& grid) {
    if (!(grid.amplitude.norm() > 0.0))
        throw validation_error("Schmidt decomposition of an all-zero amplitude");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(grid.amplitude);
    const Eigen::VectorXd s = svd.singularValues();
    const double total = s.squaredNorm();
    std::vector<double> p(s.size());
    for (int i = 0; i < s.size(); ++i) p[i] = s[i] * s[i] / total;
    return p;
}

double schmidt_purity(const JsaGrid& grid) {
    double acc = 0.0;
    for (double p : schmidt_coefficients(grid)) acc += p * p;
    return acc;
}

JsaDefaults default_jsa_params(int condition) {
    switch (condition) {
        case 1: return {1.0e5, 0.004};
        case 2: return {2.0e5, 0.008};
        case 3: return {1.0e5, 0.011};
    }
    throw validation_error("GVM condition must be 1, 2 or 3");
}

} // namespace spdc
