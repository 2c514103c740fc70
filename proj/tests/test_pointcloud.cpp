#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lyapoct/point_cloud.hpp"
#include "support.hpp"

using namespace lyapoct;

TEST_CASE("synthetic cloud of one point lies in the unit cube") {
  const PointCloud cloud = generate_synthetic_cloud({1, 123, Distribution::uniform_cube});
  REQUIRE(cloud.size() == 1);
  const Point3& p = cloud.points[0];
  CHECK(p.x >= 0.0); CHECK(p.x <= 1.0);
  CHECK(p.y >= 0.0); CHECK(p.y <= 1.0);
  CHECK(p.z >= 0.0); CHECK(p.z <= 1.0);
}

TEST_CASE("synthetic generation is deterministic") {
  for (const auto dist : {Distribution::uniform_cube, Distribution::clustered}) {
    const PointCloud a = generate_synthetic_cloud({100, 7, dist});
    const PointCloud b = generate_synthetic_cloud({100, 7, dist});
    CHECK(a.points == b.points);
    CHECK(a.source_name == b.source_name);
  }
}

TEST_CASE("synthetic points stay inside the unit cube") {
  for (const auto dist : {Distribution::uniform_cube, Distribution::clustered}) {
    const PointCloud cloud = generate_synthetic_cloud({5000, 3, dist});
    for (const Point3& p : cloud.points) {
      CHECK(p.x >= 0.0); CHECK(p.x <= 1.0);
      CHECK(p.y >= 0.0); CHECK(p.y <= 1.0);
      CHECK(p.z >= 0.0); CHECK(p.z <= 1.0);
    }
  }
}

TEST_CASE("10k uniform points occupy all eight octants") {
  const PointCloud cloud = generate_synthetic_cloud({10000, 1, Distribution::uniform_cube});
  const BoundingCube cube = bounding_cube(cloud);
  CHECK(testsupport::brute_force_occupied(cloud, cube, 1) == 8);
}

TEST_CASE("synthetic count must be positive") {
  CHECK_THROWS_AS(generate_synthetic_cloud({0, 1, Distribution::uniform_cube}),
                  std::invalid_argument);
}

TEST_CASE("bounding cube of a two-point segment") {
  PointCloud cloud;
  cloud.points = {{0, 0, 0}, {1, 0, 0}};
  const BoundingCube cube = bounding_cube(cloud);
  CHECK(cube.side == doctest::Approx(1.0));
  for (const Point3& p : cloud.points) {
    CHECK(p.x >= cube.origin.x); CHECK(p.x <= cube.origin.x + cube.side);
    CHECK(p.y >= cube.origin.y); CHECK(p.y <= cube.origin.y + cube.side);
    CHECK(p.z >= cube.origin.z); CHECK(p.z <= cube.origin.z + cube.side);
  }
}

TEST_CASE("degenerate cloud gets the unit cube convention") {
  PointCloud cloud;
  cloud.points = {{5, 5, 5}, {5, 5, 5}};
  const BoundingCube cube = bounding_cube(cloud);
  CHECK(cube.side == 1.0);
  CHECK(cube.origin.x == doctest::Approx(4.5));
  CHECK(cube.origin.y == doctest::Approx(4.5));
  CHECK(cube.origin.z == doctest::Approx(4.5));
}

TEST_CASE("bounding cube contains every point and side equals max extent") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 20; ++iter) {
    PointCloud cloud;
    const std::size_t n = 1 + rng() % 100;
    for (std::size_t i = 0; i < n; ++i)
      cloud.points.push_back({1000.0 * testsupport::unit_double(rng) - 500.0,
                              10.0 * testsupport::unit_double(rng),
                              200.0 * testsupport::unit_double(rng) - 100.0});
    const BoundingCube cube = bounding_cube(cloud);

    double lo[3] = {cloud.points[0].x, cloud.points[0].y, cloud.points[0].z};
    double hi[3] = {lo[0], lo[1], lo[2]};
    for (const Point3& p : cloud.points) {
      lo[0] = std::min(lo[0], p.x); hi[0] = std::max(hi[0], p.x);
      lo[1] = std::min(lo[1], p.y); hi[1] = std::max(hi[1], p.y);
      lo[2] = std::min(lo[2], p.z); hi[2] = std::max(hi[2], p.z);
    }
    const double extent =
        std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]});
    CHECK(cube.side == extent);

    const double eps = 1e-9 * cube.side;
    for (const Point3& p : cloud.points) {
      CHECK(p.x >= cube.origin.x - eps); CHECK(p.x <= cube.origin.x + cube.side + eps);
      CHECK(p.y >= cube.origin.y - eps); CHECK(p.y <= cube.origin.y + cube.side + eps);
      CHECK(p.z >= cube.origin.z - eps); CHECK(p.z <= cube.origin.z + cube.side + eps);
    }
  }
}

TEST_CASE("bounding cube of empty cloud throws") {
  CHECK_THROWS_AS(bounding_cube(PointCloud{}), EmptyCloud);
}
