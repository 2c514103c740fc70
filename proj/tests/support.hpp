#pragma once

// Shared helpers for the test suites: independent brute-force oracles and
// deterministic random input generators. Nothing here may call into the
// implementation paths it is used to check.

#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

#include "lyapoct/octree.hpp"
#include "lyapoct/point_cloud.hpp"

namespace testsupport {

inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Independent occupied-voxel count: direct per-depth floor division over the
// cube, cells hashed as packed (ix, iy, iz) triples. Deliberately avoids the
// library's interleaved-key path.
inline std::uint64_t brute_force_occupied(const lyapoct::PointCloud& cloud,
                                          const lyapoct::BoundingCube& cube, int depth) {
  const double cells_per_axis = static_cast<double>(std::uint64_t{1} << depth);
  const double cell_size = cube.side / cells_per_axis;
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(cloud.size());
  auto index_of = [&](double coord, double origin) {
    double idx = std::floor((coord - origin) / cell_size);
    if (idx < 0.0) idx = 0.0;
    if (idx > cells_per_axis - 1.0) idx = cells_per_axis - 1.0;
    return static_cast<std::uint64_t>(idx);
  };
  for (const lyapoct::Point3& p : cloud.points) {
    const std::uint64_t ix = index_of(p.x, cube.origin.x);
    const std::uint64_t iy = index_of(p.y, cube.origin.y);
    const std::uint64_t iz = index_of(p.z, cube.origin.z);
    seen.insert(ix | (iy << 21) | (iz << 42));
  }
  return seen.size();
}

// Random DepthSummary satisfying every structural invariant, without going
// through a point cloud: occupied[0] = 1, non-decreasing, occupied[d+1] <=
// 8*occupied[d], occupied[d] <= min(total_points, 8^d). Plateaus are forced
// with probability ~1/4 per level so tie cases actually occur downstream.
inline lyapoct::DepthSummary random_summary(std::mt19937_64& rng, int max_depth) {
  lyapoct::DepthSummary s;
  s.max_depth = max_depth;
  s.occupied.resize(static_cast<std::size_t>(max_depth) + 1);
  s.occupied[0] = 1;
  for (int d = 1; d <= max_depth; ++d) {
    const std::uint64_t cap_cells = std::uint64_t{1} << (3 * d);  // 8^d, d <= 21
    std::uint64_t next;
    if (rng() % 4 == 0) {
      next = s.occupied[d - 1];  // plateau
    } else {
      const std::uint64_t growth = 1 + rng() % 8;  // factor in [1,8]
      next = s.occupied[d - 1] * growth;
    }
    next = std::min(next, 8 * s.occupied[d - 1]);
    next = std::min(next, cap_cells);
    s.occupied[d] = next;
  }
  s.total_points = s.occupied[max_depth] + rng() % 64;
  s.cube = lyapoct::BoundingCube{{0.0, 0.0, 0.0}, 1.0};
  s.frame_id = "random";
  return s;
}

}  // namespace testsupport
