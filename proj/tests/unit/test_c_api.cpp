#include "stars/stars.h"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <string>

namespace {

stars_config* desk_small() {
  stars_config* c = nullptr;
  REQUIRE(stars_config_profile("desk", &c) == STARS_OK);
  REQUIRE(stars_config_set(c, "M_T", "6") == STARS_OK);
  REQUIRE(stars_config_set(c, "M_R", "6") == STARS_OK);
  REQUIRE(stars_config_set(c, "N_h", "2") == STARS_OK);
  REQUIRE(stars_config_set(c, "N_v", "2") == STARS_OK);
  return c;
}

}  // namespace

TEST_CASE("status codes and thread-local error text") {
  stars_config* c = nullptr;
  CHECK(stars_config_profile("nope", &c) == STARS_E_INVALID_ARGUMENT);
  CHECK(std::string(stars_last_error()).find("nope") != std::string::npos);
  CHECK(stars_config_load("/nonexistent/file.cfg", &c) == STARS_E_IO);
  CHECK(stars_config_profile(nullptr, &c) == STARS_E_INVALID_ARGUMENT);
  c = desk_small();
  CHECK(stars_config_set(c, "bogus", "1") == STARS_E_CONFIG);
  CHECK(stars_config_set(c, "M_T", "x") == STARS_E_PARSE);
  CHECK(stars_config_set(c, "tau_up", "1") == STARS_OK);
  CHECK(stars_config_validate(c) == STARS_E_CONFIG);
  stars_config_free(c);
  stars_mode m;
  CHECK(stars_mode_parse("HD_STARS", &m) == STARS_OK);
  CHECK(m == STARS_MODE_HD_STARS);
  CHECK(stars_mode_parse("??", &m) != STARS_OK);
}

TEST_CASE("evaluate, serialize and optimize through handles") {
  stars_config* c = desk_small();
  stars_scenario* s = nullptr;
  REQUIRE(stars_scenario_create(c, &s) == STARS_OK);
  stars_pbm* p = nullptr;
  REQUIRE(stars_pbm_random(4, STARS_MODE_FD_STARS, 3, &p) == STARS_OK);
  int n = 0;
  CHECK(stars_pbm_size(p, &n) == STARS_OK);
  CHECK(n == 4);
  double sum = 0, ul = 0, dl = 0;
  REQUIRE(stars_evaluate(s, p, STARS_MODE_FD_STARS, &sum, &ul, &dl) == STARS_OK);
  CHECK(sum == Catch::Approx(ul + dl));
  char* json = nullptr;
  REQUIRE(stars_pbm_to_json(p, &json) == STARS_OK);
  stars_pbm* q = nullptr;
  REQUIRE(stars_pbm_from_json(json, &q) == STARS_OK);
  stars_string_free(json);
  double sum2 = 0;
  REQUIRE(stars_evaluate(s, q, STARS_MODE_FD_STARS, &sum2, nullptr, nullptr) == STARS_OK);
  CHECK(sum2 == sum);

  stars_pbm* best = nullptr;
  double fbest = 0;
  char* trace = nullptr;
  REQUIRE(stars_optimize(s, p, STARS_MODE_FD_STARS, &best, &fbest, &trace) == STARS_OK);
  CHECK(fbest > sum);
  CHECK(std::strncmp(trace, "iteration,", 10) == 0);
  stars_string_free(trace);

  stars_pbm* wrong = nullptr;
  REQUIRE(stars_pbm_random(5, STARS_MODE_FD_STARS, 3, &wrong) == STARS_OK);
  CHECK(stars_evaluate(s, wrong, STARS_MODE_FD_STARS, &sum, nullptr, nullptr) == STARS_E_INVALID_ARGUMENT);

  for (stars_pbm* x : {p, q, best, wrong}) stars_pbm_free(x);
  stars_scenario_free(s);
  stars_config_free(c);
}

TEST_CASE("commands through the C interface") {
  stars_config* c = desk_small();
  stars_validate_options o;
  stars_validate_options_init(&o);
  CHECK(o.n_realizations == 1000);
  o.n_realizations = 0;
  int passed = -1;
  CHECK(stars_cmd_validate(c, &o, nullptr, nullptr, &passed) == STARS_E_INVALID_ARGUMENT);

  const uint64_t seeds[] = {1, 2};
  char* csv = nullptr;
  REQUIRE(stars_cmd_gradcheck(c, seeds, 2, STARS_MODE_FD_STARS, 0, nullptr, &csv, &passed) == STARS_OK);
  CHECK(passed == 1);
  stars_string_free(csv);

  const double values[] = {16.0};
  const stars_mode modes[] = {STARS_MODE_RANDOM_PBM};
  CHECK(stars_cmd_sweep(c, "N", values, 1, modes, 0, 1, 1, nullptr, nullptr) == STARS_E_INVALID_ARGUMENT);
  REQUIRE(stars_cmd_sweep(c, "N", values, 1, modes, 1, 2, 1, nullptr, &csv) == STARS_OK);
  CHECK(std::string(csv).find("N,16,RANDOM_PBM,") != std::string::npos);
  stars_string_free(csv);
  stars_config_free(c);
}
