#include "lyapoct/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace lyapoct {

BoundingCube bounding_cube(const PointCloud& cloud) {
  if (cloud.empty()) throw EmptyCloud();

  double lo[3] = {std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  double hi[3] = {-std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  for (const Point3& p : cloud.points) {
    lo[0] = std::min(lo[0], p.x);
    lo[1] = std::min(lo[1], p.y);
    lo[2] = std::min(lo[2], p.z);
    hi[0] = std::max(hi[0], p.x);
    hi[1] = std::max(hi[1], p.y);
    hi[2] = std::max(hi[2], p.z);
  }

  double side = 0.0;
  for (int axis = 0; axis < 3; ++axis) side = std::max(side, hi[axis] - lo[axis]);
  if (side == 0.0) side = 1.0;  // all points identical

  BoundingCube cube;
  cube.side = side;
  cube.origin.x = 0.5 * (lo[0] + hi[0]) - 0.5 * side;
  cube.origin.y = 0.5 * (lo[1] + hi[1]) - 0.5 * side;
  cube.origin.z = 0.5 * (lo[2] + hi[2]) - 0.5 * side;
  return cube;
}

namespace {

// [0,1) double from the raw engine word; avoids the implementation-defined
// std::uniform_real_distribution so identical seeds give identical clouds
// everywhere.
double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string synthetic_source_name(const SyntheticSpec& spec) {
  const char* dist = spec.distribution == Distribution::uniform_cube ? "uniform" : "clustered";
  return "synthetic_" + std::string(dist) + "_" + std::to_string(spec.count) + "_" +
         std::to_string(spec.seed);
}

PointCloud generate_synthetic_cloud(const SyntheticSpec& spec) {
  if (spec.count < 1) throw std::invalid_argument("synthetic cloud count must be >= 1");

  std::mt19937_64 rng(spec.seed);
  PointCloud cloud;
  cloud.source_name = synthetic_source_name(spec);
  cloud.points.reserve(spec.count);

  if (spec.distribution == Distribution::uniform_cube) {
    for (std::size_t i = 0; i < spec.count; ++i) {
      const double x = unit_double(rng);
      const double y = unit_double(rng);
      const double z = unit_double(rng);
      cloud.points.push_back({x, y, z});
    }
    return cloud;
  }

  // clustered: 8 compact blobs, points uniform in a small box around a
  // center, clamped into the unit cube.
  constexpr std::size_t kClusters = 8;
  constexpr double kSpread = 0.06;
  Point3 centers[kClusters];
  for (auto& c : centers) {
    c.x = 0.15 + 0.70 * unit_double(rng);
    c.y = 0.15 + 0.70 * unit_double(rng);
    c.z = 0.15 + 0.70 * unit_double(rng);
  }
  auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
  for (std::size_t i = 0; i < spec.count; ++i) {
    const Point3& c = centers[rng() % kClusters];
    const double x = clamp01(c.x + kSpread * (2.0 * unit_double(rng) - 1.0));
    const double y = clamp01(c.y + kSpread * (2.0 * unit_double(rng) - 1.0));
    const double z = clamp01(c.z + kSpread * (2.0 * unit_double(rng) - 1.0));
    cloud.points.push_back({x, y, z});
  }
  return cloud;
}

}  // namespace lyapoct
