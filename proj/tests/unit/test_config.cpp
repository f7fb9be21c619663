#include "stars/config.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace stars;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("reference profile holds the stated defaults") {
  const SystemConfig c = SystemConfig::paper();
  CHECK(c.M_T == 128);
  CHECK(c.M_R == 128);
  CHECK(c.N() == 144);
  CHECK(c.tau_c == 200);
  CHECK(c.p_b_dBm == 30.0);
  CHECK(c.p_u_dBm == 15.0);
  CHECK(c.sigma2_dBm == -94.0);
  CHECK(c.alpha == 2.6);
  CHECK(c.mu_1 == 500.0);
  CHECK(c.epsilon == 1e-5);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("dBm and dB conversions") {
  CHECK(dbm_to_watts(30.0) == Catch::Approx(1.0));
  CHECK(dbm_to_watts(0.0) == Catch::Approx(1e-3));
  SystemConfig c = SystemConfig::desk();
  c.sigma2_L_dB = 0.0;
  CHECK(c.sigma2_L() == c.sigma2());
  c.sigma2_L_dB = 10.0;
  CHECK(c.sigma2_L() == Catch::Approx(10.0 * c.sigma2()));
}

TEST_CASE("short pilots are rejected") {
  SystemConfig c = SystemConfig::desk();
  c.tau_up = c.K() - 1;
  CHECK_THROWS_WITH(c.validate(), ContainsSubstring("pilot length below user count"));
}

TEST_CASE("config text round-trips and hashes stably") {
  SystemConfig c = SystemConfig::desk();
  c.p_b_dBm = 27.5;
  c.seed = 42;
  c.geometry_kind = GeometryKind::Circular;
  const SystemConfig back = parse_config(to_config_text(c));
  CHECK(to_config_text(back) == to_config_text(c));
  CHECK(config_hash(back) == config_hash(c));
  c.seed = 43;
  CHECK(config_hash(back) != config_hash(c));
}

TEST_CASE("parser reports missing keys, unknown keys and bad values") {
  const std::string full = to_config_text(SystemConfig::desk());
  std::string missing = full;
  missing.erase(missing.find("alpha"), missing.find('\n', missing.find("alpha")) - missing.find("alpha") + 1);
  try {
    parse_config(missing);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK_THAT(e.what(), ContainsSubstring("alpha"));
  }
  try {
    parse_config(full + "bogus = 1\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
  SystemConfig c;
  try {
    apply_override(c, "M_T", "many");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  const std::string text = "# header\n\n" + to_config_text(SystemConfig::desk()) + "  # trailing\n";
  CHECK(parse_config(text).M_T == 32);
}

TEST_CASE("pre-log factor") {
  SystemConfig c = SystemConfig::desk();
  CHECK(c.zeta() == Catch::Approx(192.0 / 200.0));
}
