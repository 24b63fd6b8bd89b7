#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

namespace ekss {

inline constexpr const char* kArtifactVersion = "0.1.0";

// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t h);

// "# ekss <version> config_hash=<hex> seed=<seed>" followed by the column row.
void write_csv_header(std::ostream& os, std::uint64_t config_hash, std::uint64_t seed,
                      const std::vector<std::string>& columns);

// Full-precision, locale-independent number formatting for CSV and .dat files.
std::string num(double x);

// Plain-text column file: "# x y ..." header then whitespace-separated rows.
void write_columns(const std::filesystem::path& path, const std::vector<std::string>& columns,
                   const std::vector<std::vector<double>>& rows);

// Tracks artifacts under an output directory and writes manifest.txt with one
// "<fnv1a64 of contents>  <relative path>" line per file. Thread safe.
class Manifest {
 public:
  explicit Manifest(std::filesystem::path dir);
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path(const std::string& name) const { return dir_ / name; }
  void add(const std::string& name);
  void write() const;
  std::vector<std::string> files() const;

 private:
  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::vector<std::string> files_;
};

std::uint64_t file_hash(const std::filesystem::path& p);

}  // namespace ekss
