#pragma once

// Table and summary serialization. CSV carries a lossless column (hex-significand
// binary64 or "num/den") next to a decimal one; JSON summaries go through nlohmann.

#include <wavefd/grid.hpp>
#include <wavefd/scalar.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace wavefd {

using Json = nlohmann::ordered_json;

/// Lossless plus decimal rendering of a scalar, as a JSON object.
template <Scalar S>
Json scalar_json(const S& v) {
    return Json{{"lossless", lossless(v)}, {"decimal", decimal(v)}};
}

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) {
        require(row.size() == header_.size(), ErrorKind::shape, "csv row width does not match header");
        rows_.push_back(std::move(row));
    }

    std::string str() const {
        std::string out;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t j = 0; j < cells.size(); ++j) {
                if (j) out += ',';
                out += cells[j];
            }
            out += '\n';
        };
        line(header_);
        for (const auto& r : rows_) line(r);
        return out;
    }

    std::size_t size() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Field dump with header i,k,value,decimal; rows ordered by k then i.
template <Scalar S>
CsvTable field_table(const DiscreteField<S>& f) {
    CsvTable t({"i", "k", "value", "decimal"});
    for (int k = 0; k <= f.k_max(); ++k)
        for (int i = 0; i <= f.i_max(); ++i)
            t.add({std::to_string(i), std::to_string(k), lossless(f(i, k)), decimal(f(i, k))});
    return t;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(os), ErrorKind::parameter, "cannot open " + path.string() + " for writing");
    os << text;
    require(static_cast<bool>(os), ErrorKind::parameter, "write to " + path.string() + " failed");
}

inline void write_csv(const std::filesystem::path& path, const CsvTable& t) { write_text(path, t.str()); }

inline std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

inline void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, json_text(j)); }

}  // namespace wavefd
