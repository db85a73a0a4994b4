#include "spdc/gvm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spdc/errors.hpp"
#include "spdc/units.hpp"

namespace spdc {

double gvm_residual(const CrystalRecord& rec, const Geometry& g, const PhotonTriple& t,
                    int condition) {
    const auto& pols = rec.interaction.pols;
    const double up = inv_group_velocity(rec, g, pols[0], t.pump_um);
    const double us = inv_group_velocity(rec, g, pols[1], t.signal_um);
    const double ui = inv_group_velocity(rec, g, pols[2], t.idler_um);
    switch (condition) {
        case 1: return up - us;
        case 2: return up - ui;
        // evaluated as the sum of the two pair residuals so the identity
        // residual(3) == residual(1) + residual(2) holds to the last bit
        case 3: return (up - us) + (up - ui);
    }
    throw validation_error("GVM condition must be 1, 2 or 3");
}

double ridge_angle_deg(const CrystalRecord& rec, const Geometry& g, const PhotonTriple& t,
                       bool* singular) {
    const auto& pols = rec.interaction.pols;
    const double up = inv_group_velocity(rec, g, pols[0], t.pump_um);
    const double us = inv_group_velocity(rec, g, pols[1], t.signal_um);
    const double ui = inv_group_velocity(rec, g, pols[2], t.idler_um);
    const bool sing = std::abs(up - us) < 1e-12 && std::abs(up - ui) < 1e-12;
    if (singular) *singular = sing;
    if (sing) return 0.0;
    double th = rad2deg(std::atan2(-(up - us), up - ui));
    if (th < 0.0) th += 180.0;
    if (th >= 180.0) th -= 180.0;
    return th;
}

namespace {

Geometry qpm_geometry(const CrystalRecord& rec, double period_um) {
    Geometry g;
    g.kind = Geometry::Kind::Qpm;
    g.period_um = period_um;
    g.qpm_order = rec.interaction.qpm_order;
    return g;
}

GvmSolution make_solution(const CrystalRecord& rec, int condition, double lamp,
                          const Geometry& g) {
    GvmSolution s;
    s.condition = condition;
    s.triple = PhotonTriple::degenerate(lamp);
    s.geometry = g;
    s.theta_pmf_deg = ridge_angle_deg(rec, g, s.triple, &s.pmf_singular);
    s.deff = d_eff(rec, g, {lamp, 2.0 * lamp, 2.0 * lamp});
    return s;
}

std::vector<GvmSolution> solve_bpm(const CrystalRecord& rec, int condition, double lo,
                                   double hi, double step) {
    const std::string plane = "xy"; // biaxial records here phase-match in this plane
    auto pm_roots = [&](double lamp) {
        try {
            return solve_bpm_angle(rec, PhotonTriple::degenerate(lamp), plane);
        } catch (const no_solution_error&) {
            return std::vector<double>{};
        }
    };
    auto residual = [&](double lamp, double ang) {
        const Geometry g = rec.optical_class == "biaxial" ? Geometry::bpm_plane(plane, ang)
                                                          : Geometry::bpm_uniaxial(ang);
        return gvm_residual(rec, g, PhotonTriple::degenerate(lamp), condition);
    };

    std::vector<GvmSolution> sols;
    double fmin = std::numeric_limits<double>::infinity();
    double fmax = -fmin;

    double prev_lamp = 0.0;
    std::vector<std::pair<double, double>> prev; // (angle, residual) per root index
    bool have_prev = false;

    for (double lamp = lo; lamp <= hi + 1e-12; lamp += step) {
        const auto roots = pm_roots(lamp);
        std::vector<std::pair<double, double>> cur;
        cur.reserve(roots.size());
        for (double r : roots) {
            const double f = residual(lamp, r);
            fmin = std::min(fmin, f);
            fmax = std::max(fmax, f);
            cur.emplace_back(r, f);
        }
        if (have_prev && prev.size() == cur.size() && !cur.empty()) {
            for (std::size_t j = 0; j < cur.size(); ++j) {
                const auto [r0, f0] = prev[j];
                const auto [r1, f1] = cur[j];
                // same branch only: the angle must move continuously
                if (!(f0 * f1 < 0.0) || std::abs(r1 - r0) >= deg2rad(5.0)) continue;
                double a = prev_lamp, b = lamp, fa = f0;
                double m = lamp;
                for (int it = 0; it < 200; ++it) {
                    m = 0.5 * (a + b);
                    const auto rm = pm_roots(m);
                    if (rm.size() <= j) break;
                    const double fm = residual(m, rm[j]);
                    if (std::abs(fm) < 1e-6) break;
                    if (fa * fm < 0.0) b = m;
                    else { a = m; fa = fm; }
                }
                const auto rm = pm_roots(m);
                if (rm.size() > j) {
                    const Geometry g = rec.optical_class == "biaxial"
                                           ? Geometry::bpm_plane(plane, rm[j])
                                           : Geometry::bpm_uniaxial(rm[j]);
                    sols.push_back(make_solution(rec, condition, m, g));
                }
            }
        }
        prev_lamp = lamp;
        prev = std::move(cur);
        have_prev = true;
    }

    if (sols.empty()) {
        std::ostringstream os;
        os << rec.id << ": GVM" << condition << " never crossed over pump ["
           << lo << ", " << hi << "] um";
        if (std::isfinite(fmin))
            os << " (residual spans [" << fmin << ", " << fmax << "] fs/um)";
        else
            os << " (no phase-matching angle anywhere in the window)";
        throw no_solution_error(os.str(), fmin, fmax);
    }
    return sols;
}

std::vector<GvmSolution> solve_qpm(const CrystalRecord& rec, int condition, double lo,
                                   double hi, double step) {
    const Geometry probe = qpm_geometry(rec, 1.0); // period irrelevant for group indices
    auto residual = [&](double lamp) {
        return gvm_residual(rec, probe, PhotonTriple::degenerate(lamp), condition);
    };

    std::vector<GvmSolution> sols;
    double fmin = std::numeric_limits<double>::infinity();
    double fmax = -fmin;

    bool have_prev = false;
    double l0 = 0.0, f0 = 0.0;
    for (double lamp = lo; lamp <= hi + 1e-12; lamp += step) {
        const double f1 = residual(lamp);
        fmin = std::min(fmin, f1);
        fmax = std::max(fmax, f1);
        if (have_prev && f0 * f1 < 0.0) {
            double a = l0, b = lamp, fa = f0;
            double m = lamp;
            // run the bracket down to machine precision: this lets the ridge
            // singularity test (1e-12) see a genuinely vanishing residual on
            // isotropic records, where signal and idler branches coincide
            for (int it = 0; it < 200; ++it) {
                m = 0.5 * (a + b);
                const double fm = residual(m);
                if (std::abs(fm) < 1e-13 || b - a < 1e-14) break;
                if (fa * fm < 0.0) b = m;
                else { a = m; fa = fm; }
            }
            const double per = poling_period(rec, PhotonTriple::degenerate(m),
                                             rec.interaction.qpm_order);
            sols.push_back(make_solution(rec, condition, m, qpm_geometry(rec, per)));
        }
        l0 = lamp;
        f0 = f1;
        have_prev = true;
    }

    if (sols.empty()) {
        std::ostringstream os;
        os << rec.id << ": GVM" << condition << " never crossed over pump ["
           << lo << ", " << hi << "] um (residual spans [" << fmin << ", " << fmax
           << "] fs/um)";
        throw no_solution_error(os.str(), fmin, fmax);
    }
    return sols;
}

} // namespace

std::vector<GvmSolution> solve_gvm(const CrystalRecord& rec, int condition, double step_um) {
    return solve_gvm(rec, condition, rec.interaction.pump_search_um.lo,
                     rec.interaction.pump_search_um.hi, step_um);
}

std::vector<GvmSolution> solve_gvm(const CrystalRecord& rec, int condition, double lo_um,
                                   double hi_um, double step_um) {
    if (!(lo_um > 0.0) || !(hi_um > lo_um))
        throw validation_error("pump scan window must satisfy 0 < lo < hi");
    if (rec.interaction.kind == "qpm") return solve_qpm(rec, condition, lo_um, hi_um, step_um);
    return solve_bpm(rec, condition, lo_um, hi_um, step_um);
}

PmMap pm_map(const CrystalRecord& rec, double pump_lo_um, double pump_hi_um,
             double signal_lo_um, double signal_hi_um, int n_pump, int n_signal) {
    if (n_pump < 2 || n_signal < 2) throw validation_error("map needs at least 2x2 samples");
    if (!(pump_hi_um > pump_lo_um) || !(signal_hi_um > signal_lo_um))
        throw validation_error("map axis bounds must be increasing");

    PmMap m;
    m.pump_um.resize(n_pump);
    m.signal_um.resize(n_signal);
    for (int i = 0; i < n_pump; ++i)
        m.pump_um[i] = pump_lo_um + (pump_hi_um - pump_lo_um) * i / (n_pump - 1);
    for (int j = 0; j < n_signal; ++j)
        m.signal_um[j] = signal_lo_um + (signal_hi_um - signal_lo_um) * j / (n_signal - 1);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    m.period_um = Eigen::MatrixXd::Constant(n_pump, n_signal, nan);
    m.theta_deg = Eigen::MatrixXd::Constant(n_pump, n_signal, nan);

    const Geometry g = qpm_geometry(rec, 1.0);
    for (int i = 0; i < n_pump; ++i) {
        for (int j = 0; j < n_signal; ++j) {
            const double lp = m.pump_um[i];
            const double inv_i = 1.0 / lp - 1.0 / m.signal_um[j];
            if (inv_i <= 0.0) continue;
            PhotonTriple t{lp, m.signal_um[j], 1.0 / inv_i};
            if (!rec.transparent(t.pump_um) || !rec.transparent(t.signal_um) ||
                !rec.transparent(t.idler_um))
                continue;
            try {
                m.period_um(i, j) = poling_period(rec, t, 1);
                m.theta_deg(i, j) = ridge_angle_deg(rec, g, t);
            } catch (const error&) {
                // degenerate grating or out-of-validity sample stays NaN
            }
        }
    }
    return m;
}

} // namespace spdc
