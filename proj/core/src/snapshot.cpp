#include "ekss/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "ekss/errors.hpp"

namespace ekss {

namespace {

constexpr std::array<char, 4> kMagic{'E', 'K', 'S', 'S'};

template <class T>
void put(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(bytes.data(), bytes.size());
}

template <class T>
T get(std::istream& is) {
  std::array<char, sizeof(T)> bytes;
  if (!is.read(bytes.data(), bytes.size())) throw ValidationError("snapshot: truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const GridSpec& grid,
                    const std::vector<const ScalarField*>& components) {
  for (const ScalarField* c : components) require_same_grid(grid, c->grid(), "snapshot");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("snapshot: cannot open " + path.string());
  os.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(os, kSnapshotVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.n));
  put<double>(os, grid.L);
  put<std::uint8_t>(os, grid.offset ? 1 : 0);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(components.size()));
  if constexpr (std::endian::native == std::endian::little) {
    for (const ScalarField* c : components)
      os.write(reinterpret_cast<const char*>(c->data()), static_cast<std::streamsize>(c->size() * sizeof(double)));
  } else {
    for (const ScalarField* c : components)
      for (double v : c->values()) put<double>(os, v);
  }
  if (!os) throw ValidationError("snapshot: write failed for " + path.string());
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& f) {
  write_snapshot(path, f.grid(), {&f});
}

void write_snapshot(const std::filesystem::path& path, const VectorField& u) {
  write_snapshot(path, u.grid(), {&u[0], &u[1], &u[2]});
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("snapshot: cannot open " + path.string());
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) throw ValidationError("snapshot: bad magic");
  const auto version = get<std::uint32_t>(is);
  if (version != kSnapshotVersion) throw ValidationError("snapshot: unsupported version " + std::to_string(version));
  Snapshot s;
  s.grid.n = static_cast<int>(get<std::uint32_t>(is));
  s.grid.L = get<double>(is);
  s.grid.offset = get<std::uint8_t>(is) != 0;
  s.grid.validate();
  const auto count = get<std::uint32_t>(is);
  s.components.reserve(count);
  for (std::uint32_t c = 0; c < count; ++c) {
    ScalarField f(s.grid);
    for (double& v : f.values()) v = get<double>(is);
    s.components.push_back(std::move(f));
  }
  return s;
}

}  // namespace ekss
