#include "spdc/deff.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace spdc {

namespace {

// chi = n^2 - 1 on the field's branch, clamping lambda into the usable window
// (Miller partners like lam_m/2 can fall below an axis model's validity).
double chi(const CrystalRecord& rec, const Geometry& g, const std::string& branch,
           double lam) {
    Interval win{};
    if ((branch == "e" && g.kind == Geometry::Kind::BpmUniaxial)) {
        const auto& o = rec.axis("o").model.valid_range_um;
        const auto& e = rec.axis("e").model.valid_range_um;
        win = {std::max(o.lo, e.lo), std::min(o.hi, e.hi)};
    } else if (branch == "xy" || branch == "xz" || branch == "yz") {
        const auto& a = rec.axis(branch.substr(0, 1)).model.valid_range_um;
        const auto& b = rec.axis(branch.substr(1, 1)).model.valid_range_um;
        win = {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    } else {
        win = rec.axis(branch).model.valid_range_um;
    }
    const double l = std::clamp(lam, win.lo, win.hi);
    const double n = index_at(rec, g, branch, l);
    return n * n - 1.0;
}

// Per-field Miller ratio: product over pump/signal/idler of
// chi(branch, lambda_field) / chi(branch, measurement partner).
double miller_ratio(const CrystalRecord& rec, const Geometry& g,
                    const std::array<double, 3>& lams, double meas_um) {
    const auto& pols = rec.interaction.pols;
    const double meas[3] = {meas_um / 2.0, meas_um, meas_um};
    double r = 1.0;
    for (int f = 0; f < 3; ++f)
        r *= chi(rec, g, pols[f], lams[f]) / chi(rec, g, pols[f], meas[f]);
    return r;
}

// Contracted Voigt label -> full index triple (i, j, k), 1-based.
std::array<int, 3> label_triple(const std::string& label) {
    if (label.size() != 3 || label[0] != 'd')
        throw geometry_error("bad tensor label '" + label + "'");
    const int i = label[1] - '0';
    const int J = label[2] - '0';
    static const int jk[7][2] = {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {2, 3}, {1, 3}, {1, 2}};
    if (i < 1 || i > 3 || J < 1 || J > 6)
        throw geometry_error("bad tensor label '" + label + "'");
    return {i, jk[J][0], jk[J][1]};
}

// Kleinman symmetry makes d_ijk fully symmetric, so the sorted index triple
// identifies an equivalence class of contracted labels (d24 = d32, d15 = d31,
// d14 = d25 = d36, ...).
std::array<int, 3> sorted_triple(std::array<int, 3> t) {
    std::sort(t.begin(), t.end());
    return t;
}

class EntryTable {
public:
    EntryTable(const CrystalRecord& rec, const Geometry& g, const std::array<double, 3>& lams)
        : rec_(rec), g_(g), lams_(lams) {
        for (const auto& e : rec.d_entries)
            by_triple_[sorted_triple(label_triple(e.tensor_label))] = &e;
    }

    // Miller-scaled signed coefficient for any label in the Kleinman class;
    // nullopt when the registry has no entry for it.
    std::optional<double> scaled(const std::string& label) const {
        auto it = by_triple_.find(sorted_triple(label_triple(label)));
        if (it == by_triple_.end())
            return std::nullopt;
        const NonlinearEntry& e = *it->second;
        return e.magnitude_pm_v * miller_ratio(rec_, g_, lams_, e.measurement_um);
    }

    std::optional<double> scaled_any(std::initializer_list<const char*> labels) const {
        for (const char* l : labels)
            if (auto v = scaled(l))
                return v;
        return std::nullopt;
    }

    // Largest-|d| entry regardless of label (isotropic QPM, where orientation
    // patterning is engineered to access the single independent coefficient).
    std::optional<std::pair<std::string, double>> largest() const {
        const NonlinearEntry* best = nullptr;
        for (const auto& e : rec_.d_entries)
            if (!best || std::fabs(e.magnitude_pm_v) > std::fabs(best->magnitude_pm_v))
                best = &e;
        if (!best)
            return std::nullopt;
        return std::make_pair(best->tensor_label,
                              best->magnitude_pm_v *
                                  miller_ratio(rec_, g_, lams_, best->measurement_um));
    }

private:
    struct TripleLess {
        bool operator()(const std::array<int, 3>& a, const std::array<int, 3>& b) const {
            return a < b;
        }
    };
    const CrystalRecord& rec_;
    const Geometry& g_;
    const std::array<double, 3>& lams_;
    std::map<std::array<int, 3>, const NonlinearEntry*, TripleLess> by_triple_;
};

DeffResult unknown(const std::string& why) {
    DeffResult r;
    r.detail = why;
    return r;
}

DeffResult value(double v, const std::string& detail) {
    DeffResult r;
    r.known = true;
    r.value_pm_v = std::fabs(v);
    r.detail = detail;
    return r;
}

int axis_number(const std::string& label) {
    if (label == "x" || label == "o") return 1;
    if (label == "y") return 2;
    if (label == "z" || label == "e") return 3;
    throw geometry_error("no tensor axis for branch '" + label + "'");
}

DeffResult bpm_uniaxial_deff(const CrystalRecord& rec, const Geometry& g,
                             const EntryTable& tab) {
    const auto& pols = rec.interaction.pols;
    const int n_e = static_cast<int>(std::count(pols.begin(), pols.end(), "e"));
    const double th = g.theta_rad;
    const std::string& pg = rec.point_group;

    if (pg == "-42m" || pg == "-4") {
        // d36 and (for -4) d31 enter in sin2phi/cos2phi quadrature
        const double a = tab.scaled("d36").value_or(0.0);
        const double b = pg == "-4" ? tab.scaled_any({"d31", "d15"}).value_or(0.0) : 0.0;
        const double base = std::hypot(a, b);
        if (base == 0.0)
            return unknown("no d36/d31 entry");
        const double v = n_e >= 2 ? base * std::fabs(std::sin(2.0 * th))
                                  : base * std::fabs(std::sin(th));
        return value(v, "d36-class coupling, azimuth-maximized");
    }
    if (pg == "3m" || pg == "-62m") {
        const double d31 = pg == "3m" ? tab.scaled_any({"d31", "d15"}).value_or(0.0) : 0.0;
        const double d22 = tab.scaled("d22").value_or(0.0);
        if (n_e >= 2) {
            if (d22 == 0.0)
                return unknown("two-e coupling needs d22");
            return value(d22 * std::cos(th) * std::cos(th), "d22 cos^2(theta)");
        }
        if (d31 == 0.0 && d22 == 0.0)
            return unknown("no d31/d22 entry");
        return value(std::fabs(d31 * std::sin(th)) + std::fabs(d22 * std::cos(th)),
                     "|d31 sin| + |d22 cos|, azimuth-maximized");
    }
    if (pg == "6" || pg == "4" || pg == "6mm" || pg == "4mm") {
        if (n_e >= 2)
            return unknown("two-e coupling vanishes in this class");
        const auto d31 = tab.scaled_any({"d31", "d15", "d32", "d24"});
        if (!d31)
            return unknown("no d31 entry");
        return value(*d31 * std::sin(th), "d31 sin(theta)");
    }
    throw geometry_error("unsupported point group '" + pg + "' for BPM d_eff");
}

} // namespace

DeffResult d_eff(const CrystalRecord& rec, const Geometry& g,
                 const std::array<double, 3>& lams_um) {
    EntryTable tab(rec, g, lams_um);
    if (rec.d_entries.empty())
        return unknown("no tensor entries in registry");

    if (rec.interaction.kind == "bpm") {
        if (g.kind == Geometry::Kind::BpmUniaxial)
            return bpm_uniaxial_deff(rec, g, tab);
        // biaxial principal plane; the registry's only pattern is the
        // in-plane/normal/in-plane type-II interaction in the xy plane (mm2)
        if (rec.point_group != "mm2")
            throw geometry_error("unsupported point group '" + rec.point_group +
                                 "' for plane BPM d_eff");
        const auto& pols = rec.interaction.pols;
        if (!(pols[0] == "xy" && pols[1] == "z" && pols[2] == "xy"))
            return unknown("no formula for this mm2 polarization pattern");
        const double d31 = tab.scaled_any({"d31", "d15"}).value_or(0.0);
        const double d32 = tab.scaled_any({"d32", "d24"}).value_or(0.0);
        if (d31 == 0.0 && d32 == 0.0)
            return unknown("no d31/d32 entry");
        const double s2 = std::sin(g.phi_rad) * std::sin(g.phi_rad);
        return value(d31 * s2 + d32 * (1.0 - s2), "d31 sin^2(phi) + d32 cos^2(phi)");
    }

    // QPM: no angle; the raw tensor element couples the three principal
    // polarizations, Kleinman-equivalent labels accepted, and point-group
    // equalities (4mm/6mm: d31 = d32) honored via an alias query.
    const double qf = 2.0 / (g.qpm_order * pi);
    if (rec.optical_class == "isotropic") {
        const auto best = tab.largest();
        if (!best)
            return unknown("no tensor entries in registry");
        return value(best->second * qf, best->first + " * 2/(m pi)");
    }
    const auto& pols = rec.interaction.pols;
    std::array<int, 3> t = {axis_number(pols[0]), axis_number(pols[1]), axis_number(pols[2])};
    std::array<int, 3> key = sorted_triple(t);
    auto direct = [&](const std::array<int, 3>& k) -> std::optional<double> {
        // query via a representative label d(i)(jk)
        static const std::map<std::pair<int, int>, int> contract = {
            {{1, 1}, 1}, {{2, 2}, 2}, {{3, 3}, 3}, {{2, 3}, 4}, {{1, 3}, 5}, {{1, 2}, 6}};
        // try each choice of leading index present in the triple
        for (int lead = 0; lead < 3; ++lead) {
            std::array<int, 3> rest;
            int nrest = 0;
            for (int q = 0; q < 3; ++q)
                if (q != lead)
                    rest[nrest++] = k[q];
            const int jlo = std::min(rest[0], rest[1]), jhi = std::max(rest[0], rest[1]);
            auto it = contract.find({jlo, jhi});
            if (it == contract.end())
                continue;
            const std::string label = "d" + std::to_string(k[lead]) + std::to_string(it->second);
            if (auto v = tab.scaled(label))
                return v;
        }
        return std::nullopt;
    };
    std::optional<double> v = direct(key);
    if (!v && (rec.point_group == "4mm" || rec.point_group == "6mm")) {
        // d31 = d32: the (1,1,3) and (2,2,3) couplings coincide
        std::array<int, 3> alias = key;
        for (int& q : alias)
            if (q == 1) q = 2;
            else if (q == 2) q = 1;
        v = direct(sorted_triple(alias));
    }
    if (!v)
        return unknown("no tensor entry couples (" + pols[0] + "," + pols[1] + "," + pols[2] + ")");
    return value(*v * qf, "tensor entry * 2/(m pi)");
}

} // namespace spdc
