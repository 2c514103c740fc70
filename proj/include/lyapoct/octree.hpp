#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lyapoct/point_cloud.hpp"

namespace lyapoct {

/// Deepest supported subdivision: 3*21 = 63 interleaved index bits.
inline constexpr int kMaxOctreeDepth = 21;

class DepthOutOfRange : public std::out_of_range {
 public:
  explicit DepthOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

/// Per-depth occupancy of one frame's octree over its bounding cube.
/// occupied[d] is the number of cells of the 2^d x 2^d x 2^d grid holding at
/// least one point. Everything downstream (quality, workload, controller)
/// consumes summaries, never raw clouds.
struct DepthSummary {
  int max_depth = 0;
  std::vector<std::uint64_t> occupied;  // size max_depth + 1
  std::uint64_t total_points = 0;
  BoundingCube cube;
  std::string frame_id;
};

/// Count occupied voxels at every depth 0..max_depth. Points exactly on the
/// cube's maximal boundary are clamped into the last cell.
DepthSummary build_summary(const PointCloud& cloud, int max_depth);

/// One representative point per occupied voxel at `depth`: the centroid of
/// the voxel's points. Output is ordered by voxel index, so the result is
/// deterministic; its size equals build_summary(cloud, depth).occupied[depth].
PointCloud downsample(const PointCloud& cloud, int depth);

enum class QualityKind { voxel_ratio, log_voxel };

struct QualityModel {
  QualityKind kind = QualityKind::voxel_ratio;
};

enum class WorkloadKind { voxel_count, points_per_voxel_cost };

struct WorkloadModel {
  WorkloadKind kind = WorkloadKind::voxel_count;
  double scale = 1.0;  // work-units per voxel
};

/// Visualization quality of rendering at `depth`, in [0,1], non-decreasing
/// in depth. voxel_ratio: occupied[d]/occupied[max]; log_voxel:
/// ln(occupied[d])/ln(occupied[max]) with the single-voxel cloud mapping
/// to 1 by convention.
double quality(const DepthSummary& summary, int depth, const QualityModel& model);

/// Work (in work-units) enqueued by rendering at `depth`; strictly positive
/// and non-decreasing in depth. voxel_count: scale * occupied[d];
/// points_per_voxel_cost: scale * total_points * occupied[d]/occupied[max].
double workload(const DepthSummary& summary, int depth, const WorkloadModel& model);

}  // namespace lyapoct
