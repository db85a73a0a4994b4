#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spdc/dispersion.hpp"

namespace spdc {

struct DispersionAxis {
    DispersionModel model;
    std::string citation;
    std::string provenance; // "transcribed" | "reconstructed"
};

struct NonlinearEntry {
    std::string tensor_label;   // "d31", "d36", ...
    double magnitude_pm_v = 0.0; // signed
    double measurement_um = 0.0;
    std::optional<double> uncertainty_pm_v;
    std::string citation;
};

struct Interaction {
    std::string kind;                       // "bpm" | "qpm"
    std::array<std::string, 3> pols;        // pump, signal, idler branch labels
    Interval pump_search_um;
    int qpm_order = 1;
};

struct CrystalRecord {
    std::string id;
    std::string chemical_formula;
    std::string optical_class;  // uniaxial-positive|uniaxial-negative|biaxial|isotropic
    std::string point_group;
    Interval transparency_um;
    std::map<std::string, DispersionAxis> dispersion; // axis label -> model
    std::vector<NonlinearEntry> d_entries;
    Interaction interaction;
    std::vector<std::string> references;
    std::vector<std::string> notes;

    const DispersionAxis& axis(const std::string& label) const;
    bool transparent(double lam_um) const { return transparency_um.contains(lam_um); }

    // Range-checked index on a principal axis (range_error outside the axis
    // model's validity window). Solver-facing unchecked access goes through
    // optics.hpp.
    double refractive_index(const std::string& axis_label, double lam_um) const;
};

class Registry {
public:
    int schema_version = 1;
    std::vector<CrystalRecord> crystals;

    static Registry load(const std::string& path);
    void save(const std::string& path) const;
    std::string serialize() const;

    const CrystalRecord& find(const std::string& id) const; // error lists known ids
    bool has(const std::string& id) const;
    std::vector<std::string> ids() const;

    // Invariant suite from the data contract; throws validation_error.
    void validate() const;
};

// FNV-1a 64-bit over raw bytes; used for manifest registry/output hashes.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64_file(const std::string& path);

} // namespace spdc
