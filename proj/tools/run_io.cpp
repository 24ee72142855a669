#include "run_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace fsgeo::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void rename_into_place(const std::filesystem::path& tmp,
                       const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("failed to move " + tmp.string() + " to " +
                             path.string() + ": " + ec.message());
  }
}

std::filesystem::path temp_sibling(const std::filesystem::path& path) {
  return path.parent_path() / (path.filename().string() + ".tmp");
}

}  // namespace

void write_csv_atomic(const std::filesystem::path& path, const CsvRow& header,
                      const std::vector<CsvRow>& rows) {
  const auto tmp = temp_sibling(path);
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    auto emit = [&out](const CsvRow& row) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << row[i];
      }
      out << '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  rename_into_place(tmp, path);
}

void write_manifest_atomic(const std::filesystem::path& path, const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["parameters"] = m.parameters;
  j["seed"] = m.seed;
  j["n_samples"] = m.n_samples;
  j["version"] = m.version;
  j["wall_time_s"] = m.wall_time_s;

  const auto tmp = temp_sibling(path);
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << j.dump(2) << '\n';
  }
  rename_into_place(tmp, path);
}

int worker_count() {
  if (const char* env = std::getenv("FSGEO_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace fsgeo::cli
