#include "spdc/phasematch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spdc/errors.hpp"
#include "spdc/units.hpp"

namespace spdc {

PhotonTriple PhotonTriple::from_pump_signal(double pump_um, double signal_um) {
    const double inv_i = 1.0 / pump_um - 1.0 / signal_um;
    if (inv_i <= 0.0) {
        std::ostringstream os;
        os << "signal " << signal_um << " um carries at least the full pump energy at "
           << pump_um << " um; no idler exists";
        throw range_error(os.str());
    }
    return {pump_um, signal_um, 1.0 / inv_i};
}

double delta_k(const CrystalRecord& rec, const Geometry& g, const PhotonTriple& t) {
    const auto& pols = rec.interaction.pols;
    const double np = index_at(rec, g, pols[0], t.pump_um);
    const double ns = index_at(rec, g, pols[1], t.signal_um);
    const double ni = index_at(rec, g, pols[2], t.idler_um);
    double dk = two_pi * (np / t.pump_um - ns / t.signal_um - ni / t.idler_um);
    if (g.kind == Geometry::Kind::Qpm) {
        if (!(g.period_um > 0.0))
            throw geometry_error("QPM geometry requires a positive poling period");
        dk -= two_pi * static_cast<double>(g.qpm_order) / g.period_um;
    }
    return dk;
}

namespace {

Geometry geometry_at(const CrystalRecord& rec, const std::string& plane, double ang) {
    if (rec.optical_class == "biaxial") return Geometry::bpm_plane(plane, ang);
    return Geometry::bpm_uniaxial(ang);
}

} // namespace

std::vector<double> solve_bpm_angle(const CrystalRecord& rec, const PhotonTriple& t,
                                    const std::string& plane) {
    const double step = deg2rad(0.1);
    const double hi = 0.5 * pi;

    auto f = [&](double ang) { return delta_k(rec, geometry_at(rec, plane, ang), t); };

    std::vector<double> roots;
    double fmin = std::numeric_limits<double>::infinity();
    double fmax = -fmin;

    double a = 0.0;
    double fa = f(a);
    fmin = std::min(fmin, fa);
    fmax = std::max(fmax, fa);
    if (std::abs(fa) < 1e-8) roots.push_back(a);

    while (a < hi) {
        double b = std::min(a + step, hi);
        double fb = f(b);
        fmin = std::min(fmin, fb);
        fmax = std::max(fmax, fb);
        if (std::abs(fb) < 1e-8) {
            if (roots.empty() || b - roots.back() > 0.5 * step) roots.push_back(b);
        } else if (fa * fb < 0.0) {
            double lo = a, up = b, flo = fa;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (lo + up);
                const double fm = f(m);
                if (std::abs(fm) < 1e-8) { lo = up = m; break; }
                if (flo * fm < 0.0) up = m;
                else { lo = m; flo = fm; }
            }
            const double r = 0.5 * (lo + up);
            if (roots.empty() || r - roots.back() > 0.5 * step) roots.push_back(r);
        }
        a = b;
        fa = fb;
    }

    if (roots.empty()) {
        std::ostringstream os;
        os << "no phase-matching angle for " << rec.id << " at pump " << t.pump_um
           << " um (delta_k spans [" << fmin << ", " << fmax << "] rad/um)";
        throw no_solution_error(os.str(), fmin, fmax);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double poling_period(const CrystalRecord& rec, const PhotonTriple& t, int order) {
    if (order < 1) throw validation_error("QPM order must be >= 1");
    const auto& pols = rec.interaction.pols;
    Geometry g; // principal-axis propagation; labels are axis names
    g.kind = Geometry::Kind::Qpm;
    g.period_um = 1.0; // placeholder, not used by index_at on principal labels
    const double np = index_at(rec, g, pols[0], t.pump_um);
    const double ns = index_at(rec, g, pols[1], t.signal_um);
    const double ni = index_at(rec, g, pols[2], t.idler_um);
    const double dk = two_pi * (np / t.pump_um - ns / t.signal_um - ni / t.idler_um);
    if (std::abs(dk) < 1e-14) {
        throw range_error("bulk mismatch vanishes; grating period diverges at pump " +
                          std::to_string(t.pump_um) + " um");
    }
    return two_pi * static_cast<double>(order) / std::abs(dk);
}

} // namespace spdc
