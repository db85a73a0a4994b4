#include "spdc/registry.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace spdc {

namespace {

Term parse_term(const json& jt, const std::string& where) {
    if (!jt.is_array() || jt.size() < 2)
        throw validation_error(where + ": term must be [kind, params...]");
    const std::string kind = jt.at(0).get<std::string>();
    Term t;
    if (kind == "const") {
        t.kind = Term::Kind::Const;
        t.a = jt.at(1).get<double>();
    } else if (kind == "pole" || kind == "res" || kind == "pow") {
        if (jt.size() != 3)
            throw validation_error(where + ": '" + kind + "' term takes two parameters");
        t.kind = kind == "pole" ? Term::Kind::Pole
               : kind == "res"  ? Term::Kind::Resonance
                                : Term::Kind::Power;
        t.a = jt.at(1).get<double>();
        t.b = jt.at(2).get<double>();
    } else {
        throw validation_error(where + ": unknown term kind '" + kind + "'");
    }
    return t;
}

json term_to_json(const Term& t) {
    switch (t.kind) {
    case Term::Kind::Const: return json::array({"const", t.a});
    case Term::Kind::Pole: return json::array({"pole", t.a, t.b});
    case Term::Kind::Resonance: return json::array({"res", t.a, t.b});
    case Term::Kind::Power: return json::array({"pow", t.a, t.b});
    }
    throw error("unreachable term kind");
}

Interval parse_interval(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw validation_error(where + ": expected [lo, hi]");
    return Interval{j.at(0).get<double>(), j.at(1).get<double>()};
}

template <typename T>
T require(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key))
        throw validation_error(where + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw validation_error(where + ": field '" + key + "': " + e.what());
    }
}

} // namespace

const DispersionAxis& CrystalRecord::axis(const std::string& label) const {
    auto it = dispersion.find(label);
    if (it == dispersion.end())
        throw geometry_error(id + " has no dispersion axis '" + label + "'");
    return it->second;
}

double CrystalRecord::refractive_index(const std::string& axis_label, double lam_um) const {
    return axis(axis_label).model.n_checked(lam_um);
}

Registry Registry::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw error("cannot open registry file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    Registry reg;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        return reg; // blank file: empty registry
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw validation_error("registry parse error in " + path + ": " + e.what());
    }
    if (root.is_null() || (root.is_object() && root.empty()))
        return reg;
    reg.schema_version = require<int>(root, "schema_version", path);
    if (reg.schema_version != 1)
        throw validation_error(path + ": unsupported schema_version " +
                               std::to_string(reg.schema_version));
    if (!root.contains("crystals"))
        return reg;

    for (const json& jc : root.at("crystals")) {
        CrystalRecord rec;
        rec.id = require<std::string>(jc, "id", "crystal record");
        const std::string where = "crystal '" + rec.id + "'";
        rec.chemical_formula = require<std::string>(jc, "chemical_formula", where);
        rec.optical_class = require<std::string>(jc, "optical_class", where);
        rec.point_group = require<std::string>(jc, "point_group", where);
        rec.transparency_um = parse_interval(jc.at("transparency_um"), where + ".transparency_um");

        for (const auto& [label, jd] : jc.at("dispersion").items()) {
            DispersionAxis ax;
            for (const json& jt : jd.at("terms"))
                ax.model.terms.push_back(parse_term(jt, where + ".dispersion." + label));
            ax.model.valid_range_um =
                parse_interval(jd.at("valid_range_um"), where + ".valid_range_um");
            ax.citation = require<std::string>(jd, "citation", where);
            ax.provenance = require<std::string>(jd, "provenance", where);
            rec.dispersion.emplace(label, std::move(ax));
        }

        if (jc.contains("d_entries")) {
            for (const json& je : jc.at("d_entries")) {
                NonlinearEntry e;
                e.tensor_label = require<std::string>(je, "tensor_label", where);
                e.magnitude_pm_v = require<double>(je, "magnitude_pm_v", where);
                e.measurement_um = require<double>(je, "measurement_um", where);
                if (je.contains("uncertainty_pm_v"))
                    e.uncertainty_pm_v = je.at("uncertainty_pm_v").get<double>();
                e.citation = require<std::string>(je, "citation", where);
                rec.d_entries.push_back(std::move(e));
            }
        }

        const json& ji = jc.at("interaction");
        rec.interaction.kind = require<std::string>(ji, "kind", where + ".interaction");
        const auto pols = require<std::vector<std::string>>(ji, "pols", where + ".interaction");
        if (pols.size() != 3)
            throw validation_error(where + ".interaction.pols must list pump, signal, idler");
        std::copy(pols.begin(), pols.end(), rec.interaction.pols.begin());
        rec.interaction.pump_search_um =
            parse_interval(ji.at("pump_search_um"), where + ".pump_search_um");
        if (ji.contains("qpm_order"))
            rec.interaction.qpm_order = ji.at("qpm_order").get<int>();

        if (jc.contains("references"))
            rec.references = jc.at("references").get<std::vector<std::string>>();
        if (jc.contains("notes"))
            rec.notes = jc.at("notes").get<std::vector<std::string>>();

        reg.crystals.push_back(std::move(rec));
    }
    reg.validate();
    return reg;
}

std::string Registry::serialize() const {
    json root;
    root["schema_version"] = schema_version;
    json jcs = json::array();
    for (const CrystalRecord& rec : crystals) {
        json jc;
        jc["id"] = rec.id;
        jc["chemical_formula"] = rec.chemical_formula;
        jc["optical_class"] = rec.optical_class;
        jc["point_group"] = rec.point_group;
        jc["transparency_um"] = {rec.transparency_um.lo, rec.transparency_um.hi};
        json jd = json::object();
        for (const auto& [label, ax] : rec.dispersion) {
            json terms = json::array();
            for (const Term& t : ax.model.terms)
                terms.push_back(term_to_json(t));
            jd[label] = {{"terms", terms},
                         {"valid_range_um", {ax.model.valid_range_um.lo, ax.model.valid_range_um.hi}},
                         {"citation", ax.citation},
                         {"provenance", ax.provenance}};
        }
        jc["dispersion"] = jd;
        json jes = json::array();
        for (const NonlinearEntry& e : rec.d_entries) {
            json je = {{"tensor_label", e.tensor_label},
                       {"magnitude_pm_v", e.magnitude_pm_v},
                       {"measurement_um", e.measurement_um},
                       {"citation", e.citation}};
            if (e.uncertainty_pm_v)
                je["uncertainty_pm_v"] = *e.uncertainty_pm_v;
            jes.push_back(je);
        }
        jc["d_entries"] = jes;
        jc["interaction"] = {{"kind", rec.interaction.kind},
                             {"pols", rec.interaction.pols},
                             {"pump_search_um",
                              {rec.interaction.pump_search_um.lo, rec.interaction.pump_search_um.hi}}};
        if (rec.interaction.kind == "qpm")
            jc["interaction"]["qpm_order"] = rec.interaction.qpm_order;
        jc["references"] = rec.references;
        jc["notes"] = rec.notes;
        jcs.push_back(jc);
    }
    root["crystals"] = jcs;
    return root.dump(1);
}

void Registry::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out)
        throw error("cannot write registry file: " + path);
    out << serialize() << '\n';
}

bool Registry::has(const std::string& id) const {
    for (const auto& c : crystals)
        if (c.id == id)
            return true;
    return false;
}

const CrystalRecord& Registry::find(const std::string& id) const {
    for (const auto& c : crystals)
        if (c.id == id)
            return c;
    std::ostringstream msg;
    msg << "unknown crystal id '" << id << "'; available:";
    for (const auto& c : crystals)
        msg << ' ' << c.id;
    throw error(msg.str());
}

std::vector<std::string> Registry::ids() const {
    std::vector<std::string> out;
    out.reserve(crystals.size());
    for (const auto& c : crystals)
        out.push_back(c.id);
    return out;
}

void Registry::validate() const {
    std::set<std::string> seen;
    for (const CrystalRecord& rec : crystals) {
        const std::string where = "crystal '" + rec.id + "'";
        if (!seen.insert(rec.id).second)
            throw validation_error("duplicate crystal id '" + rec.id + "'");

        if (!(rec.transparency_um.lo > 0.0 && rec.transparency_um.lo < rec.transparency_um.hi))
            throw validation_error(where + ": transparency window must satisfy 0 < lo < hi");

        // axis sets are fixed per optical class
        std::set<std::string> axes;
        for (const auto& [label, ax] : rec.dispersion)
            axes.insert(label);
        const std::set<std::string> uni = {"o", "e"}, bi = {"x", "y", "z"}, iso = {"n"};
        if (rec.optical_class == "uniaxial-positive" || rec.optical_class == "uniaxial-negative") {
            if (axes != uni)
                throw validation_error(where + ": uniaxial records need axes {o,e}");
        } else if (rec.optical_class == "biaxial") {
            if (axes != bi)
                throw validation_error(where + ": biaxial records need axes {x,y,z}");
        } else if (rec.optical_class == "isotropic") {
            if (axes != iso)
                throw validation_error(where + ": isotropic records need axis {n}");
        } else {
            throw validation_error(where + ": unknown optical_class '" + rec.optical_class + "'");
        }

        // models stay physical (finite, n >= 1) across their validity windows;
        // validity may be narrower than transparency where a source model is
        // only credible over part of the window (documented in notes).
        for (const auto& [label, ax] : rec.dispersion) {
            const Interval r = ax.model.valid_range_um;
            if (!(r.lo > 0.0 && r.lo < r.hi))
                throw validation_error(where + " axis " + label + ": bad valid_range");
            const int samples = 200;
            for (int i = 0; i < samples; ++i) {
                const double lam = r.lo + (r.hi - r.lo) * i / (samples - 1);
                const double n = ax.model.n(lam);
                if (!std::isfinite(n) || n < 1.0)
                    throw validation_error(where + " axis " + label + ": n(" +
                                           std::to_string(lam) + ") = " + std::to_string(n));
            }
        }

        // o/e ordering must match the declared class at a representative point
        if (rec.optical_class == "uniaxial-positive" || rec.optical_class == "uniaxial-negative") {
            const auto& o = rec.axis("o").model;
            const auto& e = rec.axis("e").model;
            const double lo = std::max(o.valid_range_um.lo, e.valid_range_um.lo);
            const double hi = std::min(o.valid_range_um.hi, e.valid_range_um.hi);
            const double mid = 0.5 * (lo + hi);
            const bool positive = e.n(mid) > o.n(mid);
            if (positive != (rec.optical_class == "uniaxial-positive"))
                throw validation_error(where + ": o/e ordering at " + std::to_string(mid) +
                                       " um contradicts optical_class");
        }

        if (rec.interaction.kind != "bpm" && rec.interaction.kind != "qpm")
            throw validation_error(where + ": interaction.kind must be bpm or qpm");
        if (rec.interaction.kind == "qpm" && rec.interaction.qpm_order < 1)
            throw validation_error(where + ": qpm_order must be >= 1");
        const Interval ps = rec.interaction.pump_search_um;
        if (!(ps.lo > 0.0 && ps.lo < ps.hi))
            throw validation_error(where + ": bad pump_search_um");
    }
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error("cannot open file for hashing: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string bytes = ss.str();
    return fnv1a64(bytes.data(), bytes.size());
}

} // namespace spdc
