// Command-line front end over the solver library: registry inspection,
// phase-matching and group-velocity-matching solves, poling-period maps,
// whole-registry surveys, and joint-spectrum / interference simulations.
// Every file-producing verb drops a manifest with input and output hashes so
// a run can be reproduced byte for byte.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spdc/deff.hpp"
#include "spdc/errors.hpp"
#include "spdc/gvm.hpp"
#include "spdc/hom.hpp"
#include "spdc/io.hpp"
#include "spdc/jsa.hpp"
#include "spdc/phasematch.hpp"
#include "spdc/registry.hpp"
#include "spdc/units.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
    std::string registry_path = "data/registry/crystals.json";
    std::string out_dir = "out";
    int grid = 200;
    std::string format = "csv";
};

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

std::string hex_hash(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

spdc::RunManifest make_manifest(const GlobalOpts& g, const std::string& cmdline) {
    spdc::RunManifest m;
    m.version = kVersion;
    m.command_line = cmdline;
    m.registry_path = g.registry_path;
    m.registry_hash = hex_hash(spdc::fnv1a64_file(g.registry_path));
    return m;
}

// commas would break the CSV framing; the messages embed lists
std::string csv_safe(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

std::string deff_cell(const spdc::DeffResult& d) {
    return d.known ? spdc::format_sig(d.value_pm_v) : "unknown";
}

nlohmann::json geometry_json(const spdc::Geometry& g) {
    nlohmann::json j;
    switch (g.kind) {
        case spdc::Geometry::Kind::BpmUniaxial:
            j["kind"] = "bpm-uniaxial";
            j["theta_deg"] = spdc::rad2deg(g.theta_rad);
            break;
        case spdc::Geometry::Kind::BpmBiaxialPlane:
            j["kind"] = "bpm-plane";
            j["plane"] = g.plane;
            j["phi_deg"] = spdc::rad2deg(g.phi_rad);
            break;
        case spdc::Geometry::Kind::Qpm:
            j["kind"] = "qpm";
            j["period_um"] = g.period_um;
            j["order"] = g.qpm_order;
            break;
    }
    return j;
}

// rows as array-of-objects when --format json is chosen
void emit_table(spdc::RunManifest& man, const GlobalOpts& g, const std::string& stem,
                const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
    if (g.format == "json") {
        auto arr = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json o;
            for (std::size_t i = 0; i < header.size() && i < r.size(); ++i)
                o[header[i]] = r[i];
            arr.push_back(o);
        }
        man.emit_json(g.out_dir, stem + ".json", arr);
        return;
    }
    spdc::CsvBuilder csv;
    csv.header(header);
    for (const auto& r : rows) csv.cells(r);
    man.emit(g.out_dir, stem + ".csv", csv.str());
}

void emit_matrix(spdc::RunManifest& man, const GlobalOpts& g, const std::string& stem,
                 const std::string& row_label, const std::vector<double>& row_axis,
                 const std::string& col_label, const std::vector<double>& col_axis,
                 const Eigen::MatrixXd& m) {
    if (g.format == "json") {
        nlohmann::json j;
        j[row_label] = row_axis;
        j[col_label] = col_axis;
        auto rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            auto r = nlohmann::json::array();
            for (Eigen::Index k = 0; k < m.cols(); ++k) {
                const double v = m(i, k);
                if (std::isnan(v)) r.push_back(nullptr);
                else r.push_back(v);
            }
            rows.push_back(r);
        }
        j["values"] = rows;
        man.emit_json(g.out_dir, stem + ".json", j);
        return;
    }
    spdc::CsvBuilder csv;
    std::vector<std::string> head{row_label + "\\" + col_label};
    for (double c : col_axis) head.push_back(spdc::format_sig(c));
    csv.header(head);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<std::string> cells{spdc::format_sig(row_axis[i])};
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            cells.push_back(spdc::format_sig(m(i, k)));
        csv.cells(cells);
    }
    man.emit(g.out_dir, stem + ".csv", csv.str());
}

// ---------------- info ----------------

void print_record(const spdc::CrystalRecord& r) {
    std::cout << r.id << "  (" << r.chemical_formula << ")\n"
              << "  class:        " << r.optical_class << ", point group " << r.point_group
              << "\n"
              << "  transparency: " << r.transparency_um.lo << " - " << r.transparency_um.hi
              << " um\n";
    for (const auto& [axis, d] : r.dispersion)
        std::cout << "  axis " << axis << ":       valid " << d.model.valid_range_um.lo
                  << " - " << d.model.valid_range_um.hi << " um  [" << d.citation << "]\n";
    if (r.d_entries.empty()) {
        std::cout << "  d_eff:        unknown\n";
    } else {
        for (const auto& e : r.d_entries) {
            std::cout << "  " << e.tensor_label << ":          " << e.magnitude_pm_v
                      << " pm/V @ " << e.measurement_um << " um";
            if (e.uncertainty_pm_v) std::cout << " (+- " << *e.uncertainty_pm_v << ")";
            std::cout << "  [" << e.citation << "]\n";
        }
    }
    std::cout << "  interaction:  " << r.interaction.kind << " (" << r.interaction.pols[0]
              << ", " << r.interaction.pols[1] << ", " << r.interaction.pols[2]
              << "), pump search " << r.interaction.pump_search_um.lo << " - "
              << r.interaction.pump_search_um.hi << " um";
    if (r.interaction.kind == "qpm") std::cout << ", order " << r.interaction.qpm_order;
    std::cout << "\n";
    for (const auto& n : r.notes) std::cout << "  note: " << n << "\n";
}

int cmd_info(const spdc::Registry& reg, const std::string& id) {
    if (!id.empty()) {
        print_record(reg.find(id));
        return 0;
    }
    for (const auto& r : reg.crystals) {
        std::cout << r.id << "  " << r.optical_class << "  " << r.point_group
                  << "  transparency " << r.transparency_um.lo << "-" << r.transparency_um.hi
                  << " um  " << r.interaction.kind << "\n";
    }
    return 0;
}

// ---------------- pm ----------------

int cmd_pm(const spdc::Registry& reg, const GlobalOpts& g, const std::string& cmdline,
           const std::string& id, double pump_nm, double signal_nm, int order) {
    const auto& rec = reg.find(id);
    const double lp = pump_nm * 1e-3;
    const spdc::PhotonTriple t = signal_nm > 0.0
                                     ? spdc::PhotonTriple::from_pump_signal(lp, signal_nm * 1e-3)
                                     : spdc::PhotonTriple::degenerate(lp);

    auto man = make_manifest(g, cmdline);
    man.parameters = {{"crystal", id},
                      {"pump_nm", pump_nm},
                      {"signal_nm", t.signal_um * 1e3},
                      {"idler_nm", t.idler_um * 1e3},
                      {"order", order}};

    const std::vector<std::string> header{"crystal",   "pump_nm",   "signal_nm",
                                          "idler_nm",  "kind",      "angle_deg",
                                          "period_um", "status"};
    std::vector<std::vector<std::string>> rows;

    if (rec.interaction.kind == "qpm") {
        try {
            const double per = spdc::poling_period(rec, t, order);
            rows.push_back({id, spdc::format_sig(pump_nm), spdc::format_sig(t.signal_um * 1e3),
                            spdc::format_sig(t.idler_um * 1e3), "qpm", "",
                            spdc::format_sig(per), "ok"});
            std::cout << id << ": period " << spdc::format_sig(per) << " um (order " << order
                      << ")\n";
        } catch (const spdc::range_error& e) {
            rows.push_back({id, spdc::format_sig(pump_nm), spdc::format_sig(t.signal_um * 1e3),
                            spdc::format_sig(t.idler_um * 1e3), "qpm", "", "",
                            csv_safe(e.what())});
            std::cout << id << ": " << e.what() << "\n";
        }
    } else {
        try {
            const auto roots = spdc::solve_bpm_angle(rec, t);
            for (double r : roots) {
                rows.push_back({id, spdc::format_sig(pump_nm),
                                spdc::format_sig(t.signal_um * 1e3),
                                spdc::format_sig(t.idler_um * 1e3), rec.interaction.kind,
                                spdc::format_sig(spdc::rad2deg(r)), "", "ok"});
                std::cout << id << ": angle " << spdc::format_sig(spdc::rad2deg(r))
                          << " deg\n";
            }
        } catch (const spdc::no_solution_error& e) {
            rows.push_back({id, spdc::format_sig(pump_nm), spdc::format_sig(t.signal_um * 1e3),
                            spdc::format_sig(t.idler_um * 1e3), rec.interaction.kind, "", "",
                            "not satisfied"});
            std::cout << id << ": not satisfied (" << e.what() << ")\n";
        }
    }
    emit_table(man, g, "pm_" + id, header, rows);
    man.write(g.out_dir, "pm_" + id + "_manifest.json");
    return 0;
}

// ---------------- gvm ----------------

struct GvmRow {
    int condition = 0;
    std::optional<spdc::GvmSolution> sol; // first root when several
    std::optional<double> purity;
    std::string status = "ok";
};

GvmRow solve_gvm_row(const spdc::CrystalRecord& rec, int condition, bool with_purity) {
    GvmRow row;
    row.condition = condition;
    try {
        const auto sols = spdc::solve_gvm(rec, condition);
        row.sol = sols.front();
        if (with_purity) {
            try {
                const auto def = spdc::default_jsa_params(condition);
                spdc::JsaParams jp;
                jp.length_um = def.length_um;
                jp.pump = {row.sol->triple.pump_um, def.pump_bandwidth_um};
                const auto grid = spdc::build_jsa(rec, row.sol->geometry, jp);
                row.purity = spdc::schmidt_purity(grid);
            } catch (const spdc::error&) {
                // solution stands even when the default window cannot build
            }
        }
    } catch (const spdc::no_solution_error&) {
        row.status = "not satisfied";
    }
    return row;
}

std::vector<std::string> gvm_row_cells(const std::string& id, const GvmRow& r) {
    if (!r.sol)
        return {id, std::to_string(r.condition), r.status, "", "", "", "", "", "", ""};
    const auto& s = *r.sol;
    const bool qpm = s.geometry.kind == spdc::Geometry::Kind::Qpm;
    return {id,
            std::to_string(r.condition),
            r.status,
            spdc::format_sig(s.triple.pump_um * 1e3),
            spdc::format_sig(s.triple.signal_um * 1e3),
            qpm ? "" : spdc::format_sig(spdc::rad2deg(s.geometry.angle())),
            qpm ? spdc::format_sig(s.geometry.period_um) : "",
            s.pmf_singular ? "singular" : spdc::format_sig(s.theta_pmf_deg),
            deff_cell(s.deff),
            r.purity ? spdc::format_sig(*r.purity) : ""};
}

const std::vector<std::string> kGvmHeader{
    "crystal",   "condition",     "status",      "pump_nm", "degenerate_nm",
    "angle_deg", "period_um",     "ridge_deg",   "deff_pm_v", "purity"};

int cmd_gvm(const spdc::Registry& reg, const GlobalOpts& g, const std::string& cmdline,
            const std::string& id, const std::string& condition) {
    const auto& rec = reg.find(id);
    std::vector<int> conds;
    if (condition == "all") conds = {1, 2, 3};
    else conds = {std::stoi(condition)};

    auto man = make_manifest(g, cmdline);
    man.parameters = {{"crystal", id}, {"condition", condition}};

    std::vector<std::vector<std::string>> rows;
    for (int c : conds) {
        const GvmRow row = solve_gvm_row(rec, c, true);
        rows.push_back(gvm_row_cells(id, row));
        if (row.sol) {
            const auto& s = *row.sol;
            std::cout << id << " GVM" << c << ": pump "
                      << spdc::format_sig(s.triple.pump_um * 1e3) << " nm, "
                      << (s.geometry.kind == spdc::Geometry::Kind::Qpm
                              ? "period " + spdc::format_sig(s.geometry.period_um) + " um"
                              : "angle " +
                                    spdc::format_sig(spdc::rad2deg(s.geometry.angle())) +
                                    " deg")
                      << ", ridge "
                      << (s.pmf_singular ? std::string("singular")
                                         : spdc::format_sig(s.theta_pmf_deg) + " deg")
                      << ", d_eff " << deff_cell(s.deff)
                      << (row.purity ? ", purity " + spdc::format_sig(*row.purity) : "")
                      << "\n";
        } else {
            std::cout << id << " GVM" << c << ": not satisfied\n";
        }
    }
    emit_table(man, g, "gvm_" + id, kGvmHeader, rows);
    man.write(g.out_dir, "gvm_" + id + "_manifest.json");
    return 0;
}

// ---------------- survey ----------------

int cmd_survey(const spdc::Registry& reg, const GlobalOpts& g, const std::string& cmdline) {
    struct CrystalRows {
        std::string id;
        std::string kind;
        std::vector<std::vector<std::string>> cells;
    };
    std::vector<std::future<CrystalRows>> futs;
    for (const auto& rec : reg.crystals) {
        futs.push_back(std::async(std::launch::async, [&rec]() {
            CrystalRows out;
            out.id = rec.id;
            out.kind = rec.interaction.kind;
            for (int c : {1, 2, 3}) {
                GvmRow row = solve_gvm_row(rec, c, true);
                out.cells.push_back(gvm_row_cells(rec.id, row));
            }
            return out;
        }));
    }

    std::vector<std::vector<std::string>> bpm_rows, qpm_rows;
    for (auto& f : futs) {
        CrystalRows r = f.get();
        auto& dst = r.kind == "qpm" ? qpm_rows : bpm_rows;
        for (auto& c : r.cells) dst.push_back(std::move(c));
    }

    auto man = make_manifest(g, cmdline);
    man.parameters = {{"crystals", reg.crystals.size()}};
    emit_table(man, g, "bpm_survey", kGvmHeader, bpm_rows);
    emit_table(man, g, "qpm_survey", kGvmHeader, qpm_rows);
    man.write(g.out_dir, "survey_manifest.json");
    std::cout << "survey: " << bpm_rows.size() << " bpm rows, " << qpm_rows.size()
              << " qpm rows -> " << g.out_dir << "\n";
    return 0;
}

// ---------------- map ----------------

int cmd_map(const spdc::Registry& reg, const GlobalOpts& g, const std::string& cmdline,
            const std::string& id, double pump_min_nm, double pump_max_nm,
            double signal_min_nm, double signal_max_nm) {
    const auto& rec = reg.find(id);
    const auto m = spdc::pm_map(rec, pump_min_nm * 1e-3, pump_max_nm * 1e-3,
                                signal_min_nm * 1e-3, signal_max_nm * 1e-3, g.grid, g.grid);

    auto man = make_manifest(g, cmdline);
    man.parameters = {{"crystal", id},
                      {"pump_nm", {pump_min_nm, pump_max_nm}},
                      {"signal_nm", {signal_min_nm, signal_max_nm}},
                      {"grid", g.grid}};

    std::vector<double> pump_nm(m.pump_um.size()), signal_nm(m.signal_um.size());
    for (std::size_t i = 0; i < m.pump_um.size(); ++i) pump_nm[i] = m.pump_um[i] * 1e3;
    for (std::size_t j = 0; j < m.signal_um.size(); ++j) signal_nm[j] = m.signal_um[j] * 1e3;

    emit_matrix(man, g, "map_" + id + "_period", "pump_nm", pump_nm, "signal_nm", signal_nm,
                m.period_um);
    emit_matrix(man, g, "map_" + id + "_ridge", "pump_nm", pump_nm, "signal_nm", signal_nm,
                m.theta_deg);
    man.write(g.out_dir, "map_" + id + "_manifest.json");
    std::cout << "map: " << pump_nm.size() << "x" << signal_nm.size() << " cells -> "
              << g.out_dir << "\n";
    return 0;
}

// ---------------- jsa / hom ----------------

struct SourceSetup {
    spdc::GvmSolution sol;
    spdc::JsaGrid grid;
    double length_um = 0.0;
    double bw_um = 0.0;
};

SourceSetup build_source(const spdc::CrystalRecord& rec, int condition, double length_mm,
                         double pump_bw_nm, int grid,
                         const std::optional<std::pair<double, double>>& span_s_nm,
                         const std::optional<std::pair<double, double>>& span_i_nm) {
    const auto def = spdc::default_jsa_params(condition);
    SourceSetup s;
    s.length_um = length_mm > 0.0 ? length_mm * 1e3 : def.length_um;
    s.bw_um = pump_bw_nm > 0.0 ? pump_bw_nm * 1e-3 : def.pump_bandwidth_um;

    const auto sols = spdc::solve_gvm(rec, condition);
    s.sol = sols.front();

    spdc::JsaParams jp;
    jp.length_um = s.length_um;
    jp.pump = {s.sol.triple.pump_um, s.bw_um};
    jp.grid = grid;
    if (span_s_nm)
        jp.span_signal_um = spdc::Interval{span_s_nm->first * 1e-3, span_s_nm->second * 1e-3};
    if (span_i_nm)
        jp.span_idler_um = spdc::Interval{span_i_nm->first * 1e-3, span_i_nm->second * 1e-3};
    s.grid = spdc::build_jsa(rec, s.sol.geometry, jp);
    return s;
}

nlohmann::json source_json(const std::string& id, int condition, const SourceSetup& s) {
    nlohmann::json j;
    j["crystal"] = id;
    j["condition"] = condition;
    j["pump_nm"] = s.sol.triple.pump_um * 1e3;
    j["geometry"] = geometry_json(s.sol.geometry);
    j["ridge_deg"] = s.sol.pmf_singular ? nlohmann::json() : nlohmann::json(s.sol.theta_pmf_deg);
    j["length_mm"] = s.length_um * 1e-3;
    j["pump_bw_nm"] = s.bw_um * 1e3;
    j["grid"] = static_cast<int>(s.grid.signal_um.size());
    j["span_signal_um"] = {s.grid.signal_um.front(), s.grid.signal_um.back()};
    j["span_idler_um"] = {s.grid.idler_um.front(), s.grid.idler_um.back()};
    return j;
}

int cmd_jsa(const spdc::Registry& reg, const GlobalOpts& g, const std::string& cmdline,
            const std::string& id, int condition, double length_mm, double pump_bw_nm,
            const std::optional<std::pair<double, double>>& span_s_nm,
            const std::optional<std::pair<double, double>>& span_i_nm) {
    const auto& rec = reg.find(id);
    const auto s = build_source(rec, condition, length_mm, pump_bw_nm, g.grid, span_s_nm,
                                span_i_nm);

    const auto marg = spdc::marginals(s.grid);
    const double purity = spdc::schmidt_purity(s.grid);
    const auto coeffs = spdc::schmidt_coefficients(s.grid);

    auto man = make_manifest(g, cmdline);
    man.parameters = source_json(id, condition, s);

    const std::string stem = "jsa_" + id + "_gvm" + std::to_string(condition);
    std::vector<double> s_nm(s.grid.signal_um.size()), i_nm(s.grid.idler_um.size());
    for (std::size_t i = 0; i < s_nm.size(); ++i) s_nm[i] = s.grid.signal_um[i] * 1e3;
    for (std::size_t i = 0; i < i_nm.size(); ++i) i_nm[i] = s.grid.idler_um[i] * 1e3;
    emit_matrix(man, g, stem, "signal_nm", s_nm, "idler_nm", i_nm, s.grid.amplitude);

    {
        spdc::CsvBuilder csv;
        csv.header({"wavelength_nm", "signal_marginal", "idler_marginal"});
        for (std::size_t i = 0; i < s_nm.size(); ++i)
            csv.values({s_nm[i], marg.signal[static_cast<Eigen::Index>(i)],
                        marg.idler[static_cast<Eigen::Index>(i)]});
        man.emit(g.out_dir, stem + "_marginals.csv", csv.str());
    }

    nlohmann::json side = source_json(id, condition, s);
    side["purity"] = purity;
    side["schmidt_coefficients"] =
        std::vector<double>(coeffs.begin(), coeffs.begin() + std::min<std::size_t>(20, coeffs.size()));
    side["fwhm_signal_nm"] =
        marg.fwhm_signal_um ? nlohmann::json(*marg.fwhm_signal_um * 1e3) : nlohmann::json();
    side["fwhm_idler_nm"] =
        marg.fwhm_idler_um ? nlohmann::json(*marg.fwhm_idler_um * 1e3) : nlohmann::json();
    side["boundary_clipped"] = marg.boundary_clipped;
    man.emit_json(g.out_dir, stem + "_summary.json", side);
    man.write(g.out_dir, stem + "_manifest.json");

    std::cout << id << " GVM" << condition << ": purity " << spdc::format_sig(purity)
              << ", marginal FWHM "
              << (marg.fwhm_signal_um ? spdc::format_sig(*marg.fwhm_signal_um * 1e3) : "-")
              << " / "
              << (marg.fwhm_idler_um ? spdc::format_sig(*marg.fwhm_idler_um * 1e3) : "-")
              << " nm -> " << g.out_dir << "\n";
    return 0;
}

int cmd_hom(const spdc::Registry& reg, const GlobalOpts& g, const std::string& cmdline,
            const std::string& id, int condition, double length_mm, double pump_bw_nm,
            const std::string& which, int n_delays, double span_fs) {
    const auto& rec = reg.find(id);
    const auto s = build_source(rec, condition, length_mm, pump_bw_nm, g.grid, std::nullopt,
                                std::nullopt);

    std::vector<double> delays;
    if (span_fs > 0.0) {
        delays.resize(n_delays);
        for (int i = 0; i < n_delays; ++i)
            delays[i] = -span_fs + 2.0 * span_fs * i / (n_delays - 1);
    } else if (which == "two") {
        delays = spdc::default_delays_two_fold(s.grid, n_delays);
    } else {
        delays = spdc::default_delays(
            s.grid, which == "idlers" ? spdc::Interfering::Idlers : spdc::Interfering::Signals,
            n_delays);
    }

    spdc::HomTrace trace;
    if (which == "two") {
        trace = spdc::two_fold_trace(s.grid, delays);
    } else {
        trace = spdc::four_fold_trace(
            s.grid, s.grid, delays,
            which == "idlers" ? spdc::Interfering::Idlers : spdc::Interfering::Signals);
    }

    auto man = make_manifest(g, cmdline);
    man.parameters = source_json(id, condition, s);
    man.parameters["which"] = which;
    man.parameters["delays"] = n_delays;

    const std::string stem = "hom_" + id + "_gvm" + std::to_string(condition) + "_" + which;
    if (g.format == "json") {
        nlohmann::json j;
        j["delay_fs"] = trace.delay_fs;
        j["probability"] = trace.probability;
        man.emit_json(g.out_dir, stem + ".json", j);
    } else {
        spdc::CsvBuilder csv;
        csv.header({"delay_fs", "probability"});
        for (std::size_t i = 0; i < trace.delay_fs.size(); ++i)
            csv.values({trace.delay_fs[i], trace.probability[i]});
        man.emit(g.out_dir, stem + ".csv", csv.str());
    }

    nlohmann::json side = source_json(id, condition, s);
    side["which"] = which;
    side["visibility"] = trace.visibility;
    side["plateau"] = trace.plateau;
    side["minimum"] = trace.minimum;
    side["fwhm_fs"] = trace.fwhm_fs ? nlohmann::json(*trace.fwhm_fs) : nlohmann::json();
    side["purity"] = spdc::schmidt_purity(s.grid);
    man.emit_json(g.out_dir, stem + "_summary.json", side);
    man.write(g.out_dir, stem + "_manifest.json");

    std::cout << id << " GVM" << condition << " " << which << ": visibility "
              << spdc::format_sig(trace.visibility * 100.0) << "%, dip FWHM "
              << (trace.fwhm_fs ? spdc::format_sig(*trace.fwhm_fs) + " fs" : "absent")
              << " -> " << g.out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SPDC group-velocity-matching and joint-spectrum toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--registry", g.registry_path, "crystal registry JSON")
        ->capture_default_str();
    app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
    app.add_option("--grid", g.grid, "samples per axis")->capture_default_str();
    app.add_option("--format", g.format, "data file format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    auto* info = app.add_subcommand("info", "show one crystal record or list all");
    std::string info_id;
    info->add_option("id", info_id, "crystal id");

    auto* pm = app.add_subcommand("pm", "phase-matching angle or poling period");
    std::string pm_id;
    double pm_pump_nm = 0.0, pm_signal_nm = 0.0;
    int pm_order = 1;
    pm->add_option("--crystal", pm_id)->required();
    pm->add_option("--pump-nm", pm_pump_nm)->required();
    pm->add_option("--signal-nm", pm_signal_nm, "defaults to degenerate");
    pm->add_option("--order", pm_order, "grating order")->capture_default_str();

    auto* gvm = app.add_subcommand("gvm", "group-velocity-matched operating points");
    std::string gvm_id, gvm_cond = "all";
    gvm->add_option("--crystal", gvm_id)->required();
    gvm->add_option("--condition", gvm_cond, "1|2|3|all")
        ->check(CLI::IsMember({"1", "2", "3", "all"}))
        ->capture_default_str();

    auto* map = app.add_subcommand("map", "poling period and ridge angle over a grid");
    std::string map_id;
    double map_p0 = 0.0, map_p1 = 0.0, map_s0 = 0.0, map_s1 = 0.0;
    map->add_option("--crystal", map_id)->required();
    map->add_option("--pump-min-nm", map_p0)->required();
    map->add_option("--pump-max-nm", map_p1)->required();
    map->add_option("--signal-min-nm", map_s0)->required();
    map->add_option("--signal-max-nm", map_s1)->required();

    auto* survey = app.add_subcommand("survey", "all crystals x all GVM conditions");

    auto* jsa = app.add_subcommand("jsa", "joint spectral amplitude at a GVM point");
    std::string jsa_id;
    int jsa_cond = 1;
    double jsa_len_mm = 0.0, jsa_bw_nm = 0.0;
    std::vector<double> jsa_span_s, jsa_span_i;
    jsa->add_option("--crystal", jsa_id)->required();
    jsa->add_option("--condition", jsa_cond)->check(CLI::Range(1, 3))->required();
    jsa->add_option("--length-mm", jsa_len_mm, "defaults per condition");
    jsa->add_option("--pump-bw-nm", jsa_bw_nm, "defaults per condition");
    jsa->add_option("--span-s-nm", jsa_span_s, "signal axis lo hi")->expected(2);
    jsa->add_option("--span-i-nm", jsa_span_i, "idler axis lo hi")->expected(2);

    auto* hom = app.add_subcommand("hom", "two-photon interference trace");
    std::string hom_id, hom_which = "signals";
    int hom_cond = 1, hom_delays = 201;
    double hom_len_mm = 0.0, hom_bw_nm = 0.0, hom_span_fs = 0.0;
    hom->add_option("--crystal", hom_id)->required();
    hom->add_option("--condition", hom_cond)->check(CLI::Range(1, 3))->required();
    hom->add_option("--length-mm", hom_len_mm, "defaults per condition");
    hom->add_option("--pump-bw-nm", hom_bw_nm, "defaults per condition");
    hom->add_option("--which", hom_which, "signals|idlers|two")
        ->check(CLI::IsMember({"signals", "idlers", "two"}))
        ->capture_default_str();
    hom->add_option("--delays", hom_delays, "number of delay samples")->capture_default_str();
    hom->add_option("--span-fs", hom_span_fs, "half span; defaults from bandwidth");

    CLI11_PARSE(app, argc, argv);

    const std::string cmdline = join_args(argc, argv);
    try {
        const auto reg = spdc::Registry::load(g.registry_path);
        if (info->parsed()) return cmd_info(reg, info_id);
        if (pm->parsed()) return cmd_pm(reg, g, cmdline, pm_id, pm_pump_nm, pm_signal_nm,
                                        pm_order);
        if (gvm->parsed()) return cmd_gvm(reg, g, cmdline, gvm_id, gvm_cond);
        if (map->parsed()) return cmd_map(reg, g, cmdline, map_id, map_p0, map_p1, map_s0,
                                          map_s1);
        if (survey->parsed()) return cmd_survey(reg, g, cmdline);
        if (jsa->parsed()) {
            std::optional<std::pair<double, double>> ss, si;
            if (!jsa_span_s.empty()) ss = {jsa_span_s[0], jsa_span_s[1]};
            if (!jsa_span_i.empty()) si = {jsa_span_i[0], jsa_span_i[1]};
            return cmd_jsa(reg, g, cmdline, jsa_id, jsa_cond, jsa_len_mm, jsa_bw_nm, ss, si);
        }
        if (hom->parsed())
            return cmd_hom(reg, g, cmdline, hom_id, hom_cond, hom_len_mm, hom_bw_nm,
                           hom_which, hom_delays, hom_span_fs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
