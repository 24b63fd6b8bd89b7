#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ekss/grid.hpp"

namespace ekss {

// Binary field dump:
//   "EKSS" | u32 version | u32 n | f64 L | u8 offset | u32 components |
//   components * n^3 little-endian f64, x fastest.
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
  GridSpec grid;
  std::vector<ScalarField> components;
};

void write_snapshot(const std::filesystem::path& path, const GridSpec& grid,
                    const std::vector<const ScalarField*>& components);
void write_snapshot(const std::filesystem::path& path, const ScalarField& f);
void write_snapshot(const std::filesystem::path& path, const VectorField& u);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace ekss
