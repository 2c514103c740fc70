#include "lyapoct/octree.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace lyapoct {

namespace {

void check_depth(int depth, int max_allowed) {
  if (depth < 1 || depth > max_allowed)
    throw DepthOutOfRange("octree depth " + std::to_string(depth) + " outside [1, " +
                          std::to_string(max_allowed) + "]");
}

// Normalized coordinate of one axis in [0,1]. Indexing at depth d is
// floor(v * 2^d) with clamping; because v is computed once and scaled by an
// exact power of two, the cell of a point at depth d always equals its cell
// at any deeper depth shifted right, so per-depth counts are consistent.
struct VoxelIndexer {
  BoundingCube cube;

  std::uint32_t cell(double coord, double origin, int depth) const {
    const double v = (coord - origin) / cube.side;
    const double scaled = std::floor(std::ldexp(v, depth));
    const double limit = std::ldexp(1.0, depth) - 1.0;  // 2^depth - 1
    const double clamped = std::clamp(scaled, 0.0, limit);
    return static_cast<std::uint32_t>(clamped);
  }

  // 63-bit interleaved (Morton) cell key at `depth`.
  std::uint64_t key(const Point3& p, int depth) const {
    const std::uint64_t ix = cell(p.x, cube.origin.x, depth);
    const std::uint64_t iy = cell(p.y, cube.origin.y, depth);
    const std::uint64_t iz = cell(p.z, cube.origin.z, depth);
    return spread(ix) | (spread(iy) << 1) | (spread(iz) << 2);
  }

  static std::uint64_t spread(std::uint64_t x) {
    x &= 0x1fffff;
    x = (x | (x << 32)) & 0x1f00000000ffffULL;
    x = (x | (x << 16)) & 0x1f0000ff0000ffULL;
    x = (x | (x << 8)) & 0x100f00f00f00f00fULL;
    x = (x | (x << 4)) & 0x10c30c30c30c30c3ULL;
    x = (x | (x << 2)) & 0x1249249249249249ULL;
    return x;
  }
};

std::uint64_t count_distinct_shifted(const std::vector<std::uint64_t>& sorted_keys, int shift) {
  std::uint64_t distinct = 0;
  std::uint64_t prev = 0;
  bool first = true;
  for (const std::uint64_t k : sorted_keys) {
    const std::uint64_t v = k >> shift;
    if (first || v != prev) {
      ++distinct;
      prev = v;
      first = false;
    }
  }
  return distinct;
}

}  // namespace

DepthSummary build_summary(const PointCloud& cloud, int max_depth) {
  if (cloud.empty()) throw EmptyCloud();
  check_depth(max_depth, kMaxOctreeDepth);

  DepthSummary summary;
  summary.max_depth = max_depth;
  summary.total_points = cloud.size();
  summary.cube = bounding_cube(cloud);
  summary.frame_id = cloud.source_name;

  const VoxelIndexer indexer{summary.cube};
  std::vector<std::uint64_t> keys;
  keys.reserve(cloud.size());
  for (const Point3& p : cloud.points) keys.push_back(indexer.key(p, max_depth));
  std::sort(keys.begin(), keys.end());

  // Morton keys stay sorted under right shifts, so shallower depths are one
  // dedup pass each.
  summary.occupied.resize(static_cast<std::size_t>(max_depth) + 1);
  for (int d = 0; d <= max_depth; ++d)
    summary.occupied[d] = count_distinct_shifted(keys, 3 * (max_depth - d));
  return summary;
}

PointCloud downsample(const PointCloud& cloud, int depth) {
  if (cloud.empty()) throw EmptyCloud();
  check_depth(depth, kMaxOctreeDepth);

  const BoundingCube cube = bounding_cube(cloud);
  const VoxelIndexer indexer{cube};

  struct Accum {
    double x = 0.0, y = 0.0, z = 0.0;
    std::uint64_t n = 0;
  };
  std::unordered_map<std::uint64_t, Accum> cells;
  cells.reserve(cloud.size());
  for (const Point3& p : cloud.points) {
    Accum& a = cells[indexer.key(p, depth)];
    a.x += p.x;
    a.y += p.y;
    a.z += p.z;
    ++a.n;
  }

  std::vector<std::pair<std::uint64_t, Accum>> ordered(cells.begin(), cells.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  PointCloud out;
  out.source_name = cloud.source_name;
  out.points.reserve(ordered.size());
  for (const auto& [key, a] : ordered) {
    const double inv = 1.0 / static_cast<double>(a.n);
    out.points.push_back({a.x * inv, a.y * inv, a.z * inv});
  }
  return out;
}

namespace {

void check_summary_depth(const DepthSummary& summary, int depth) {
  if (depth < 0 || depth > summary.max_depth)
    throw DepthOutOfRange("depth " + std::to_string(depth) + " exceeds summary max depth " +
                          std::to_string(summary.max_depth));
}

}  // namespace

double quality(const DepthSummary& summary, int depth, const QualityModel& model) {
  check_summary_depth(summary, depth);
  const double occ = static_cast<double>(summary.occupied[depth]);
  const double occ_max = static_cast<double>(summary.occupied[summary.max_depth]);
  switch (model.kind) {
    case QualityKind::voxel_ratio:
      return occ / occ_max;
    case QualityKind::log_voxel:
      if (occ_max == 1.0) return 1.0;  // single-voxel cloud renders fully at any depth
      return std::log(occ) / std::log(occ_max);
  }
  return 0.0;
}

double workload(const DepthSummary& summary, int depth, const WorkloadModel& model) {
  check_summary_depth(summary, depth);
  if (!(model.scale > 0.0)) throw std::invalid_argument("workload scale must be > 0");
  const double occ = static_cast<double>(summary.occupied[depth]);
  switch (model.kind) {
    case WorkloadKind::voxel_count:
      return model.scale * occ;
    case WorkloadKind::points_per_voxel_cost:
      return model.scale * static_cast<double>(summary.total_points) * occ /
             static_cast<double>(summary.occupied[summary.max_depth]);
  }
  return 0.0;
}

}  // namespace lyapoct
