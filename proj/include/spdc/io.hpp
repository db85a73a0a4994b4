#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace spdc {

// %.{sig}g formatting; NaN renders as an empty cell
std::string format_sig(double v, int significant = 6);

class CsvBuilder {
public:
    CsvBuilder& header(const std::vector<std::string>& names) { return cells(names); }
    CsvBuilder& cells(const std::vector<std::string>& row);
    CsvBuilder& values(const std::vector<double>& row); // format_sig per cell
    const std::string& str() const { return buf_; }

private:
    std::string buf_;
};

void write_text(const std::filesystem::path& path, const std::string& content);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

// Reproducibility sidecar: hashes of every file the command produced plus
// the exact inputs. Identical flags + registry bytes give identical hashes.
struct RunManifest {
    std::string tool = "spdc";
    std::string version;
    std::string command_line;
    std::string registry_path;
    std::string registry_hash;
    nlohmann::json parameters = nlohmann::json::object();

    struct Output {
        std::string name;
        std::string hash;
        std::uint64_t bytes = 0;
    };
    std::vector<Output> outputs;

    // write content under dir/name and record its hash
    std::filesystem::path emit(const std::filesystem::path& dir, const std::string& name,
                               const std::string& content);
    std::filesystem::path emit_json(const std::filesystem::path& dir, const std::string& name,
                                    const nlohmann::json& j);
    nlohmann::json to_json() const;
    void write(const std::filesystem::path& dir, const std::string& name) const;
};

} // namespace spdc
