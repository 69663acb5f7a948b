#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fima/grid.hpp"

namespace fima {

// CSV with a header line; values printed with %.17g so reruns are
// byte-identical.
void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Columns: t, value.
void write_path_csv(const std::filesystem::path& file, const SamplePath& path);

// Compact binary frame: magic "FIMAPATH", u32 version, u64 n, f64 t0, f64 dt,
// then n little-endian f64 values.
void write_path_binary(const std::filesystem::path& file, const SamplePath& path);
SamplePath read_path_binary(const std::filesystem::path& file);

std::string format_double(double v);

}  // namespace fima
