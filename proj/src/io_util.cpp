#include "fima/io_util.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fima {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream os(file);
    if (!os) throw std::runtime_error("write_csv: cannot open " + file.string());
    for (std::size_t i = 0; i < header.size(); ++i)
        os << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
}

void write_path_csv(const std::filesystem::path& file, const SamplePath& path) {
    std::vector<std::vector<double>> rows(path.times.size());
    for (std::size_t i = 0; i < path.times.size(); ++i)
        rows[i] = {path.times[i], path.values[i]};
    write_csv(file, {"t", "value"}, rows);
}

namespace {
constexpr char kMagic[8] = {'F', 'I', 'M', 'A', 'P', 'A', 'T', 'H'};
}

void write_path_binary(const std::filesystem::path& file, const SamplePath& path) {
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::runtime_error("write_path_binary: cannot open " + file.string());
    const std::uint32_t version = 1;
    const std::uint64_t n = path.times.size();
    const double t0 = path.times.empty() ? 0.0 : path.times.front();
    const double dt = path.times.size() > 1 ? path.times[1] - path.times[0] : 0.0;
    os.write(kMagic, 8);
    os.write(reinterpret_cast<const char*>(&version), sizeof(version));
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    os.write(reinterpret_cast<const char*>(&t0), sizeof(t0));
    os.write(reinterpret_cast<const char*>(&dt), sizeof(dt));
    os.write(reinterpret_cast<const char*>(path.values.data()),
             static_cast<std::streamsize>(n * sizeof(double)));
}

SamplePath read_path_binary(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw std::runtime_error("read_path_binary: cannot open " + file.string());
    char magic[8];
    std::uint32_t version = 0;
    std::uint64_t n = 0;
    double t0 = 0.0, dt = 0.0;
    is.read(magic, 8);
    if (std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("read_path_binary: bad magic");
    is.read(reinterpret_cast<char*>(&version), sizeof(version));
    is.read(reinterpret_cast<char*>(&n), sizeof(n));
    is.read(reinterpret_cast<char*>(&t0), sizeof(t0));
    is.read(reinterpret_cast<char*>(&dt), sizeof(dt));
    SamplePath path;
    path.values.resize(n);
    is.read(reinterpret_cast<char*>(path.values.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!is) throw std::runtime_error("read_path_binary: truncated file");
    path.times.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) path.times[i] = t0 + static_cast<double>(i) * dt;
    return path;
}

}  // namespace fima
