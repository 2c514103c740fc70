#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lyapoct {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

struct Color8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Color8&, const Color8&) = default;
};

/// One raw frame. Point order is preserved exactly as parsed; colors are a
/// parallel array, empty when the source carries none. Colors ride along
/// through I/O and are ignored by all quality/workload math.
struct PointCloud {
  std::vector<Point3> points;
  std::vector<Color8> colors;  // empty or points.size()
  std::string source_name;

  [[nodiscard]] std::size_t size() const { return points.size(); }
  [[nodiscard]] bool empty() const { return points.empty(); }
  [[nodiscard]] bool has_colors() const { return !colors.empty(); }
};

class EmptyCloud : public std::runtime_error {
 public:
  EmptyCloud() : std::runtime_error("operation requires a non-empty point cloud") {}
};

/// Axis-aligned cube rooting the voxel grid. origin is the minimum corner.
struct BoundingCube {
  Point3 origin;
  double side = 1.0;
};

/// Smallest axis-aligned cube containing all points, centered on the
/// axis-aligned bounding box; side equals the maximum extent over the three
/// axes. A cloud whose points are all identical gets side 1 so voxel
/// indexing never divides by zero.
BoundingCube bounding_cube(const PointCloud& cloud);

enum class Distribution { uniform_cube, clustered };

struct SyntheticSpec {
  std::size_t count = 1;
  std::uint64_t seed = 0;
  Distribution distribution = Distribution::uniform_cube;
};

/// Deterministic test cloud with all points in [0,1]^3. Identical specs
/// produce identical clouds on every platform (the engine output is pinned
/// by the standard and doubles are derived from raw engine words).
PointCloud generate_synthetic_cloud(const SyntheticSpec& spec);

/// Stable label used as the frame id of a synthetic cloud.
std::string synthetic_source_name(const SyntheticSpec& spec);

}  // namespace lyapoct
