#include "ekss/report_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ekss/errors.hpp"

namespace ekss {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 0xf];
  return s;
}

std::string num(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_csv_header(std::ostream& os, std::uint64_t config_hash, std::uint64_t seed,
                      const std::vector<std::string>& columns) {
  os << "# ekss " << kArtifactVersion << " config_hash=" << hex64(config_hash) << " seed=" << seed << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
}

void write_columns(const std::filesystem::path& path, const std::vector<std::string>& columns,
                   const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "#";
  for (const auto& c : columns) out << " " << c;
  out << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << num(r[i]);
    out << "\n";
  }
}

std::uint64_t file_hash(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return fnv1a64(ss.str());
}

Manifest::Manifest(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_))
    throw ValidationError("output directory '" + dir_.string() + "' is not writable");
  const auto probe = dir_ / ".ekss_probe";
  {
    std::ofstream t(probe);
    if (!t) throw ValidationError("output directory '" + dir_.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

void Manifest::add(const std::string& name) {
  std::lock_guard lock(mu_);
  if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
}

std::vector<std::string> Manifest::files() const {
  std::lock_guard lock(mu_);
  return files_;
}

void Manifest::write() const {
  std::vector<std::string> names = files();
  std::sort(names.begin(), names.end());
  std::ofstream out(dir_ / "manifest.txt");
  if (!out) throw Error("cannot write manifest");
  out << "# ekss " << kArtifactVersion << " artifacts\n";
  for (const auto& n : names) out << hex64(file_hash(dir_ / n)) << "  " << n << "\n";
}

}  // namespace ekss
