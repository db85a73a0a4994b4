#include "spdc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "spdc/errors.hpp"
#include "spdc/registry.hpp"

namespace spdc {

std::string format_sig(double v, int significant) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
    return buf;
}

CsvBuilder& CsvBuilder::cells(const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += row[i];
    }
    buf_ += '\n';
    return *this;
}

CsvBuilder& CsvBuilder::values(const std::vector<double>& row) {
    std::vector<std::string> cells(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) cells[i] = format_sig(row[i]);
    return this->cells(cells);
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw error("cannot open " + path.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw error("short write to " + path.string());
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text(path, j.dump(1) + "\n");
}

std::filesystem::path RunManifest::emit(const std::filesystem::path& dir,
                                        const std::string& name,
                                        const std::string& content) {
    const auto path = dir / name;
    write_text(path, content);
    Output o;
    o.name = name;
    char hex[24];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(content.data(), content.size())));
    o.hash = hex;
    o.bytes = content.size();
    outputs.push_back(std::move(o));
    return path;
}

std::filesystem::path RunManifest::emit_json(const std::filesystem::path& dir,
                                             const std::string& name,
                                             const nlohmann::json& j) {
    return emit(dir, name, j.dump(1) + "\n");
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["tool"] = tool;
    j["version"] = version;
    j["command_line"] = command_line;
    j["registry"] = {{"path", registry_path}, {"fnv1a64", registry_hash}};
    j["parameters"] = parameters;
    auto arr = nlohmann::json::array();
    for (const auto& o : outputs)
        arr.push_back({{"name", o.name}, {"fnv1a64", o.hash}, {"bytes", o.bytes}});
    j["outputs"] = arr;
    return j;
}

void RunManifest::write(const std::filesystem::path& dir, const std::string& name) const {
    write_json_file(dir / name, to_json());
}

} // namespace spdc
