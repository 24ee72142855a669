#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fsgeo::cli {

/// Everything needed to reproduce a run: re-running the command with these
/// parameters regenerates all CSV outputs byte-for-byte on the same build.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::int64_t n_samples = 0;
  std::string version;
  double wall_time_s = 0.0;
};

/// Doubles as 17-significant-digit decimal strings (round-trip exact).
std::string format_double(double v);

/// One CSV row; numeric cells go through format_double upstream.
using CsvRow = std::vector<std::string>;

/// Writes header + rows to a temporary file in the target directory, then
/// renames it into place.
void write_csv_atomic(const std::filesystem::path& path, const CsvRow& header,
                      const std::vector<CsvRow>& rows);

void write_manifest_atomic(const std::filesystem::path& path, const RunManifest& m);

/// Worker count: FSGEO_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

}  // namespace fsgeo::cli
