#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lyapoct/octree.hpp"
#include "support.hpp"

using namespace lyapoct;

namespace {

PointCloud octant_cloud() {
  PointCloud cloud;
  cloud.source_name = "octants";
  for (int i = 0; i < 8; ++i)
    cloud.points.push_back({0.25 + 0.5 * (i & 1), 0.25 + 0.5 * ((i >> 1) & 1),
                            0.25 + 0.5 * ((i >> 2) & 1)});
  return cloud;
}

}  // namespace

TEST_CASE("one point per octant occupies eight cells at depth 1") {
  const DepthSummary s = build_summary(octant_cloud(), 4);
  CHECK(s.occupied[0] == 1);
  CHECK(s.occupied[1] == 8);
  CHECK(s.total_points == 8);
}

TEST_CASE("single-point cloud occupies one cell at every depth") {
  PointCloud cloud;
  cloud.points = {{3.5, -1.25, 10.0}};
  const DepthSummary s = build_summary(cloud, 10);
  for (int d = 0; d <= 10; ++d) CHECK(s.occupied[d] == 1);
}

TEST_CASE("summary matches the brute-force grid count") {
  std::mt19937_64 rng(500);
  for (int iter = 0; iter < 10; ++iter) {
    PointCloud cloud;
    const std::size_t n = 200 + rng() % 300;
    for (std::size_t i = 0; i < n; ++i)
      cloud.points.push_back({testsupport::unit_double(rng), testsupport::unit_double(rng),
                              testsupport::unit_double(rng)});
    const DepthSummary s = build_summary(cloud, 8);
    for (int d = 0; d <= 8; ++d)
      CHECK(s.occupied[d] == testsupport::brute_force_occupied(cloud, s.cube, d));
  }
}

TEST_CASE("occupancy is monotone and bounded") {
  const PointCloud cloud = generate_synthetic_cloud({3000, 21, Distribution::clustered});
  const DepthSummary s = build_summary(cloud, 9);
  CHECK(s.occupied[0] == 1);
  for (int d = 0; d < 9; ++d) {
    CHECK(s.occupied[d + 1] >= s.occupied[d]);
    CHECK(s.occupied[d + 1] <= 8 * s.occupied[d]);
  }
  for (int d = 0; d <= 9; ++d) {
    CHECK(s.occupied[d] <= s.total_points);
    if (d <= 20) CHECK(s.occupied[d] <= (std::uint64_t{1} << (3 * d)));
  }
}

TEST_CASE("points on the maximal boundary are clamped into the last cell") {
  PointCloud cloud;
  cloud.points = {{0, 0, 0}, {1, 1, 1}, {1, 0, 0}, {0.25, 0.75, 0.25}};
  const DepthSummary s = build_summary(cloud, 8);
  CHECK(s.occupied[1] == 4);  // the two max-boundary points clamp inward, each in its own octant
  for (int d = 0; d <= 8; ++d)
    CHECK(s.occupied[d] == testsupport::brute_force_occupied(cloud, s.cube, d));
}

TEST_CASE("summary rejects bad inputs") {
  CHECK_THROWS_AS(build_summary(PointCloud{}, 4), EmptyCloud);
  PointCloud one;
  one.points = {{0, 0, 0}};
  CHECK_THROWS_AS(build_summary(one, 0), DepthOutOfRange);
  CHECK_THROWS_AS(build_summary(one, 22), DepthOutOfRange);
}

TEST_CASE("downsample of a single point returns that point") {
  PointCloud cloud;
  cloud.points = {{2.5, 3.5, -1.0}};
  const PointCloud out = downsample(cloud, 7);
  REQUIRE(out.size() == 1);
  CHECK(out.points[0] == cloud.points[0]);
}

TEST_CASE("downsample at depth 1 keeps one representative per octant") {
  const PointCloud out = downsample(octant_cloud(), 1);
  CHECK(out.size() == 8);
}

TEST_CASE("downsample size equals occupancy and stays inside cells") {
  std::mt19937_64 rng(41);
  PointCloud cloud;
  for (int i = 0; i < 800; ++i)
    cloud.points.push_back({testsupport::unit_double(rng), testsupport::unit_double(rng),
                            testsupport::unit_double(rng)});
  const int depth = 4;
  const DepthSummary s = build_summary(cloud, depth);
  const PointCloud out = downsample(cloud, depth);
  CHECK(out.size() == s.occupied[depth]);

  // each representative sits inside (or a rounding hair away from) some cell
  // that the brute-force count also sees as occupied
  const double cells = std::ldexp(1.0, depth);
  const double cell = s.cube.side / cells;
  const double eps = 1e-9 * s.cube.side;
  for (const Point3& p : out.points) {
    CHECK(p.x >= s.cube.origin.x - eps);
    CHECK(p.x <= s.cube.origin.x + s.cube.side + eps);
    const double fx = (p.x - s.cube.origin.x) / cell;
    const double fy = (p.y - s.cube.origin.y) / cell;
    const double fz = (p.z - s.cube.origin.z) / cell;
    CHECK(fx >= -1e-9); CHECK(fx <= cells + 1e-9);
    CHECK(fy >= -1e-9); CHECK(fy <= cells + 1e-9);
    CHECK(fz >= -1e-9); CHECK(fz <= cells + 1e-9);
  }
}

TEST_CASE("downsample is deterministic") {
  const PointCloud cloud = generate_synthetic_cloud({2000, 77, Distribution::clustered});
  const PointCloud a = downsample(cloud, 5);
  const PointCloud b = downsample(cloud, 5);
  CHECK(a.points == b.points);
}

TEST_CASE("quality is one at max depth and for single-voxel clouds") {
  const DepthSummary s = build_summary(octant_cloud(), 3);
  CHECK(quality(s, 3, {QualityKind::voxel_ratio}) == 1.0);
  CHECK(quality(s, 3, {QualityKind::log_voxel}) == 1.0);

  PointCloud one;
  one.points = {{1, 2, 3}};
  const DepthSummary s1 = build_summary(one, 6);
  for (int d = 0; d <= 6; ++d) {
    CHECK(quality(s1, d, {QualityKind::voxel_ratio}) == 1.0);
    CHECK(quality(s1, d, {QualityKind::log_voxel}) == 1.0);
  }
}

TEST_CASE("voxel-ratio quality equals the occupancy ratio") {
  const PointCloud cloud = generate_synthetic_cloud({1200, 5, Distribution::uniform_cube});
  const DepthSummary s = build_summary(cloud, 6);
  for (int d = 0; d <= 6; ++d) {
    const double expected = static_cast<double>(testsupport::brute_force_occupied(cloud, s.cube, d)) /
                            static_cast<double>(testsupport::brute_force_occupied(cloud, s.cube, 6));
    CHECK(quality(s, d, {QualityKind::voxel_ratio}) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("quality and workload are monotone in depth") {
  const PointCloud cloud = generate_synthetic_cloud({2500, 13, Distribution::clustered});
  const DepthSummary s = build_summary(cloud, 8);
  for (const QualityModel qm : {QualityModel{QualityKind::voxel_ratio},
                                QualityModel{QualityKind::log_voxel}}) {
    double prev = -1.0;
    for (int d = 0; d <= 8; ++d) {
      const double q = quality(s, d, qm);
      CHECK(q >= 0.0);
      CHECK(q <= 1.0);
      CHECK(q >= prev);
      prev = q;
    }
  }
  for (const WorkloadModel wm : {WorkloadModel{WorkloadKind::voxel_count, 0.01},
                                 WorkloadModel{WorkloadKind::points_per_voxel_cost, 0.001}}) {
    double prev = 0.0;
    for (int d = 0; d <= 8; ++d) {
      const double a = workload(s, d, wm);
      CHECK(a > 0.0);
      CHECK(a >= prev);
      prev = a;
    }
  }
}

TEST_CASE("workload examples") {
  const DepthSummary s = build_summary(octant_cloud(), 2);
  CHECK(workload(s, 1, {WorkloadKind::voxel_count, 1.0}) == 8.0);

  PointCloud one;
  one.points = {{0, 0, 0}};
  const DepthSummary s1 = build_summary(one, 4);
  for (int d = 0; d <= 4; ++d)
    CHECK(workload(s1, d, {WorkloadKind::voxel_count, 0.001}) == 0.001);
}

TEST_CASE("workload matches oracle counts at depth 5") {
  const PointCloud cloud = generate_synthetic_cloud({4000, 9, Distribution::uniform_cube});
  const DepthSummary s = build_summary(cloud, 8);
  const double scale = 0.25;
  const double expected =
      scale * static_cast<double>(testsupport::brute_force_occupied(cloud, s.cube, 5));
  CHECK(workload(s, 5, {WorkloadKind::voxel_count, scale}) == expected);
}

TEST_CASE("depth range errors") {
  const DepthSummary s = build_summary(octant_cloud(), 3);
  CHECK_THROWS_AS(quality(s, 4, {}), DepthOutOfRange);
  CHECK_THROWS_AS(quality(s, -1, {}), DepthOutOfRange);
  CHECK_THROWS_AS(workload(s, 4, {WorkloadKind::voxel_count, 1.0}), DepthOutOfRange);
  CHECK_THROWS_AS(downsample(PointCloud{}, 3), EmptyCloud);
}
