#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "spdc/errors.hpp"
#include "spdc/registry.hpp"

using namespace spdc;

namespace {

const char* kRegistryPath = "data/registry/crystals.json";

std::string write_temp(const std::string& tag, const std::string& content) {
    const std::string path = "build/test_registry_" + tag + ".json";
    std::ofstream f(path, std::ios::trunc);
    f << content;
    return path;
}

// minimal loadable record with an overridable id
std::string record_json(const std::string& id) {
    return R"({"id": ")" + id + R"(",
      "chemical_formula": "X", "optical_class": "isotropic", "point_group": "-43m",
      "transparency_um": [0.5, 10.0],
      "dispersion": {"n": {"terms": [["const", 4.0]], "valid_range_um": [0.5, 10.0],
                           "citation": "none", "provenance": "transcribed"}},
      "d_entries": [],
      "interaction": {"kind": "qpm", "pols": ["n", "n", "n"],
                      "pump_search_um": [1.0, 4.0], "qpm_order": 1},
      "references": []})";
}

} // namespace

TEST_CASE("shipped registry loads with every crystal present") {
    const auto reg = Registry::load(kRegistryPath);
    CHECK(reg.schema_version == 1);
    CHECK(reg.crystals.size() == 22);
    for (const char* id : {"AGS", "AGSe", "GaSe", "HGS", "TAS", "CGA", "LIS", "LISe", "LGS",
                           "LGSe", "LT", "LN", "KTP", "KN", "BaTiO3", "MgBaF4", "PMN-0.38PT",
                           "OP-ZnSe", "CMTC", "THI", "LiIO3", "AAS"})
        CHECK(reg.has(id));
    CHECK_NOTHROW(reg.validate());
}

TEST_CASE("unknown id error lists the available ids") {
    const auto reg = Registry::load(kRegistryPath);
    try {
        (void)reg.find("XYZ");
        FAIL("expected an error");
    } catch (const error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("XYZ") != std::string::npos);
        CHECK(msg.find("AGS") != std::string::npos);
    }
}

TEST_CASE("serialize then reload round-trips byte for byte") {
    const auto reg = Registry::load(kRegistryPath);
    const std::string once = reg.serialize();
    const auto path = write_temp("roundtrip", once);
    const auto again = Registry::load(path);
    CHECK(again.serialize() == once);
    std::remove(path.c_str());
}

TEST_CASE("duplicate ids are rejected") {
    const std::string doc = R"({"schema_version": 1, "crystals": [)" + record_json("DUP") +
                            "," + record_json("DUP") + "]}";
    const auto path = write_temp("dup", doc);
    CHECK_THROWS_AS((void)Registry::load(path), validation_error);
    std::remove(path.c_str());
}

TEST_CASE("blank file behaves as an empty registry") {
    const auto path = write_temp("blank", "\n");
    const auto reg = Registry::load(path);
    CHECK(reg.crystals.empty());
    CHECK(reg.ids().empty());
    std::remove(path.c_str());
}

TEST_CASE("transparency window bounds are inclusive") {
    const auto reg = Registry::load(kRegistryPath);
    const auto& cga = reg.find("CGA");
    CHECK(cga.transparent(2.3));
    CHECK(cga.transparent(10.6));
    CHECK_FALSE(cga.transparent(25.0));
    CHECK(reg.find("LN").transparent(5.5));
}

TEST_CASE("checked principal index rejects out-of-validity wavelengths") {
    const auto reg = Registry::load(kRegistryPath);
    const auto& gase = reg.find("GaSe");
    CHECK_NOTHROW((void)gase.refractive_index("o", 2.0));
    CHECK_THROWS_AS((void)gase.refractive_index("o", 25.0), range_error);
}

TEST_CASE("file hash is stable and matches the in-memory bytes") {
    // FNV-1a 64 reference value
    CHECK(fnv1a64("abc", 3) == UINT64_C(0xe71fa2190541574b));
    const std::string content = "hash me\n";
    const auto path = write_temp("hash", content);
    CHECK(fnv1a64_file(path) == fnv1a64(content.data(), content.size()));
    std::remove(path.c_str());
}

TEST_CASE("validation rejects an inverted transparency window") {
    std::string rec = record_json("BAD");
    const auto pos = rec.find("[0.5, 10.0]");
    rec.replace(pos, 11, "[10.0, 0.5]");
    const auto path = write_temp("badwin", R"({"schema_version": 1, "crystals": [)" + rec + "]}");
    CHECK_THROWS_AS((void)Registry::load(path), validation_error);
    std::remove(path.c_str());
}
