#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sxo::io {

// 17 significant digits, scientific; round-trips any double exactly.
std::string format_full(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// UTF-8 CSV with a header row; numbers written with format_full.
void write_csv(const std::filesystem::path& path, const Table& table);

// Metadata sidecar next to a CSV: same stem, .json extension.  The
// library version and a UTC timestamp are added to the caller's fields.
void write_sidecar(const std::filesystem::path& csv_path,
                   nlohmann::json meta);

// Output directory resolution: $SXO_OUT_DIR when set, else the current
// directory.  Created if missing.
std::filesystem::path out_dir();
std::filesystem::path resolve_out(const std::string& filename);

}  // namespace sxo::io
