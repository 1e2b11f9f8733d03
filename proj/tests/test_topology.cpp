#include <cmath>
#include <random>

#include "doctest.h"
#include "mmvr/error.hpp"
#include "mmvr/topology.hpp"

using namespace mmvr;

TEST_CASE("distance examples") {
  CHECK(distance({0, 0, 0}, {3, 4, 0}) == 5.0);
  CHECK(distance({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(distance({1, 2, 3}, {4, 6, 3}) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("distance is symmetric and obeys the triangle inequality") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 200; ++k) {
    const Position3D a(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng)), c(u(rng), u(rng), u(rng));
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
  }
}

TEST_CASE("departure and arrival azimuths") {
  auto a = departure_arrival_angles({0, 0, 0}, {1, 1, 0});
  CHECK(a.aod_az_deg == doctest::Approx(45.0));
  CHECK(a.aoa_az_deg == doctest::Approx(225.0));

  a = departure_arrival_angles({0, 0, 0}, {0, 2, 1});
  CHECK(a.aod_az_deg == doctest::Approx(90.0));
  CHECK(a.aoa_az_deg == doctest::Approx(270.0));

  // Negative x direction needs the quadrant-aware arctangent.
  a = departure_arrival_angles({2, 3, 1}, {1, 3, 1});
  CHECK(a.aod_az_deg == doctest::Approx(180.0));
  CHECK(a.aoa_az_deg == doctest::Approx(0.0));

  a = departure_arrival_angles({0, 0, 0}, {1, -1, 0});
  CHECK(a.aod_az_deg == doctest::Approx(315.0));
  CHECK(a.aoa_az_deg == doctest::Approx(135.0));
}

TEST_CASE("angle properties") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    const Position3D tx(u(rng), u(rng), u(rng)), rx(u(rng), u(rng), u(rng));
    const auto a = departure_arrival_angles(tx, rx);
    CHECK(a.aod_az_deg >= 0.0);
    CHECK(a.aod_az_deg < 360.0);
    CHECK(a.aoa_az_deg >= 0.0);
    CHECK(a.aoa_az_deg < 360.0);
    CHECK(a.aoa_az_deg == std::fmod(a.aod_az_deg + 180.0, 360.0));

    const auto swapped = departure_arrival_angles(rx, tx);
    CHECK(swapped.aod_az_deg == doctest::Approx(a.aoa_az_deg));
    CHECK(swapped.aoa_az_deg == doctest::Approx(a.aod_az_deg));

    const Position3D shift(1.5, -2.0, 0.25);
    const auto moved = departure_arrival_angles(tx + shift, rx + shift);
    CHECK(moved.aod_az_deg == doctest::Approx(a.aod_az_deg).epsilon(1e-9));
  }
}

TEST_CASE("coincident (x, y) is degenerate") {
  CHECK_THROWS_AS(departure_arrival_angles({1, 1, 0}, {1, 1, 2}), DegenerateGeometry);
}

TEST_CASE("topology validation") {
  const IndoorArea area;
  std::vector<AccessPoint> aps{{1, {2, 4, 2.5}}, {2, {8, 13, 2.5}}};
  std::vector<User> users{{1, {3, 8, 1.5}}, {2, {7, 10, 1.5}}};
  const NetworkTopology t(area, aps, users);
  CHECK(t.num_aps() == 2);
  CHECK(t.num_users() == 2);
  CHECK(t.distance(0, 0) == doctest::Approx(std::sqrt(1.0 + 16.0 + 1.0)));

  CHECK_THROWS_AS(NetworkTopology(area, {}, users), ConfigError);
  CHECK_THROWS_AS(NetworkTopology(area, aps, {}), ConfigError);

  auto dup = users;
  dup[1].id = 1;
  CHECK_THROWS_AS(NetworkTopology(area, aps, dup), ConfigError);

  auto outside = users;
  outside[0].position = {11, 8, 1.5};
  CHECK_THROWS_AS(NetworkTopology(area, aps, outside), ConfigError);

  auto slow = aps;
  slow[0].service_rate = 1e-9;  // below the 2e-9 arrival rate
  CHECK_THROWS_AS(NetworkTopology(area, slow, users), ConfigError);
}

TEST_CASE("random placement is seeded and stays inside the area") {
  const IndoorArea area;
  const auto a = random_positions(area, 10, 42);
  const auto b = random_positions(area, 10, 42);
  const auto c = random_positions(area, 10, 43);
  REQUIRE(a.size() == 10);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k] == b[k]);
    CHECK(area.contains(a[k]));
  }
  CHECK(a[0] != c[0]);
}
