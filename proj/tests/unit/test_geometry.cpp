#include "stars/geometry.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace stars;

TEST_CASE("line placement puts two users on the segment endpoints") {
  SystemConfig c = SystemConfig::desk();
  const UEGeometry g = place_users(c, GeometryKind::Line);
  REQUIRE(g.size() == 4);
  CHECK(g.positions[0].x == Catch::Approx(40.0));
  CHECK(g.positions[0].y == Catch::Approx(0.0));
  CHECK(g.positions[1].x == Catch::Approx(60.0));
  CHECK(g.positions[1].y == Catch::Approx(0.0));
  CHECK(g.positions[2].y == Catch::Approx(20.0));
  CHECK(g.region[0] == Region::Reflection);
  CHECK(g.region[3] == Region::Transmission);
}

TEST_CASE("a single user sits at the segment midpoint") {
  SystemConfig c = SystemConfig::desk();
  c.K_r = 1;
  const UEGeometry g = place_users(c, GeometryKind::Line);
  CHECK(g.positions[0].x == Catch::Approx(50.0));
  CHECK(g.positions[0].y == Catch::Approx(0.0));
}

TEST_CASE("circular placement is seeded and stays in its disk") {
  SystemConfig c = SystemConfig::desk();
  c.geometry_kind = GeometryKind::Circular;
  const UEGeometry a = place_users(c), b = place_users(c);
  for (int k = 0; k < a.size(); ++k) {
    CHECK(a.positions[k].x == b.positions[k].x);
    CHECK(a.positions[k].y == b.positions[k].y);
    const double cy = a.region[k] == Region::Reflection ? c.stars_y - c.d0_m : c.stars_y + c.d0_m;
    CHECK(distance(a.positions[k], {c.stars_x, cy}) <= c.circle_radius_m);
  }
  c.seed = 2;
  CHECK(place_users(c).positions[0].x != a.positions[0].x);
}

TEST_CASE("path loss") {
  CHECK(path_loss(1.0, 0.025, 0.025, 2.6) == Catch::Approx(0.025 * 0.025));
  // log-domain evaluation as an independent route
  const double expected = std::exp(2.0 * std::log(0.025) - 2.6 * std::log(10.0));
  CHECK(path_loss(10.0, 0.025, 0.025, 2.6) == Catch::Approx(expected).epsilon(1e-12));
  CHECK(path_loss(10.0, 0.025, 0.025, 2.6) == Catch::Approx(1.5699e-6).epsilon(1e-4));
  CHECK_THROWS_AS(path_loss(0.0, 1.0, 1.0, 2.0), Error);
}

TEST_CASE("link gains use configured coordinates") {
  SystemConfig c = SystemConfig::desk();
  const UEGeometry g = place_users(c);
  const LinkGains lg = link_gains(c, g);
  const double s = c.element_size_m();
  CHECK(lg.delta_g == Catch::Approx(s * s * std::pow(std::sqrt(2600.0), -c.alpha)));
  CHECK(lg.delta_gt == lg.delta_g);
  CHECK(lg.delta_h[0] == Catch::Approx(s * s * std::pow(std::sqrt(200.0), -c.alpha)));
  CHECK(lg.delta_ht[3] == lg.delta_h[3]);
}
