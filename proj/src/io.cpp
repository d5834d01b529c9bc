#include "sxo/io.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "sxo/errors.hpp"
#include "sxo/version.hpp"

namespace sxo::io {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const Table& table) {
    std::ofstream out(path);
    if (!out) throw IntegrityError("write_csv: cannot open " + path.string());
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw IntegrityError("write_csv: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_full(row[i]);
        }
        out << '\n';
    }
    if (!out.good()) throw IntegrityError("write_csv: write failed");
}

void write_sidecar(const std::filesystem::path& csv_path, nlohmann::json meta) {
    meta["library_version"] = std::string(version);

    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    meta["generated_utc"] = stamp;

    std::filesystem::path side = csv_path;
    side.replace_extension(".json");
    std::ofstream out(side);
    if (!out) throw IntegrityError("write_sidecar: cannot open " + side.string());
    out << meta.dump(2) << '\n';
}

std::filesystem::path out_dir() {
    const char* env = std::getenv("SXO_OUT_DIR");
    std::filesystem::path dir = env && *env ? env : ".";
    std::filesystem::create_directories(dir);
    return dir;
}

std::filesystem::path resolve_out(const std::string& filename) {
    std::filesystem::path p(filename);
    if (p.is_absolute()) return p;
    return out_dir() / p;
}

}  // namespace sxo::io
