#include "stars/optimizer.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

using namespace stars;

namespace {

PBM vec_pbm(const cvec& r, const cvec& t) { return {r, t}; }

}  // namespace

TEST_CASE("BB step on a unit-curvature quadratic is one") {
  std::mt19937_64 rng(2);
  const cvec r0 = oracle::complex_normal(4, rng), t0 = oracle::complex_normal(4, rng);
  const cvec dr = oracle::complex_normal(4, rng), dt = oracle::complex_normal(4, rng);
  // gradient of -|x|^2 / 2 style quadratic: g = -x, so dg = -dx and |<dx, dg>| / |dg|^2 = 1
  const Gradient g0{-r0, -t0}, g1{-(r0 + dr), -(t0 + dt)};
  for (StepRule rule : {StepRule::Bb1, StepRule::Bb2})
    CHECK(bb_step(vec_pbm(r0, t0), vec_pbm(r0 + dr, t0 + dt), g0, g1, 7.0, 500.0, rule) == Catch::Approx(1.0));
}

TEST_CASE("BB step falls back and clamps") {
  const cvec z = cvec::Zero(2), o = cvec::Ones(2);
  const Gradient g{o, o};
  CHECK(bb_step(vec_pbm(z, z), vec_pbm(o, o), g, g, 3.5, 500.0) == 3.5);
  CHECK(bb_step(vec_pbm(z, z), vec_pbm(o, o), g, g, 3.5, 500.0, StepRule::Fixed) == 3.5);
  // tiny curvature -> huge step, clamped to 1e3 mu_1
  const Gradient g2{o * (1.0 + 1e-7), o * (1.0 + 1e-7)};
  CHECK(bb_step(vec_pbm(z, z), vec_pbm(o, o), g, g2, 1.0, 2.0, StepRule::Bb1) == 2000.0);
}

TEST_CASE("ascent improves on every start and the trace is consistent") {
  const Scenario scn = Scenario::build(oracle::small_config(8, 3, 3));
  const OptOptions opt = OptOptions::from(scn.cfg);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const PBM init = random_pbm(9, seed);
    const OptResult r = prog_ram(scn, init, opt);
    CHECK(r.trace.best_objective > objective(scn, init));
    CHECK(r.best.feasibility_error() < 1e-12);
    CHECK(objective(scn, r.best) == Catch::Approx(r.trace.best_objective).epsilon(1e-12));
    CHECK(r.trace.iterates.front().iteration == 0);
    CHECK(static_cast<int>(r.trace.iterates.size()) <= opt.max_iter + 1);
    double best = -1;
    for (const auto& it : r.trace.iterates) best = std::max(best, it.objective);
    CHECK(best == r.trace.best_objective);
  }
}

TEST_CASE("optimization is bit-for-bit deterministic") {
  const Scenario scn = Scenario::build(oracle::small_config(8, 3, 3));
  const OptOptions opt = OptOptions::from(scn.cfg);
  const OptResult a = prog_ram(scn, random_pbm(9, 4), opt);
  const OptResult b = prog_ram(scn, random_pbm(9, 4), opt);
  CHECK(a.trace.to_csv() == b.trace.to_csv());
  CHECK(a.trace.to_csv().rfind("iteration,objective,step,gradnorm\n", 0) == 0);
}

TEST_CASE("zero gradient is a fixed point") {
  Scenario scn = Scenario::build(oracle::small_config(4, 2, 2));
  scn.cfg.p_b_dBm = -INFINITY;
  scn.p_u.setZero();
  const PBM init = random_pbm(4, 1);
  const OptResult r = prog_ram(scn, init, OptOptions::from(scn.cfg));
  CHECK(r.trace.iterates.size() == 2);
  CHECK(r.trace.terminated_by == Termination::RelativeImprovement);
  CHECK((r.best.theta_r - init.theta_r).norm() == 0.0);
}

TEST_CASE("split surface ascent stays in its layout") {
  const Scenario scn = Scenario::build(oracle::small_config(8, 2, 4));
  const OptResult r = prog_ram(scn, random_cris(8, 2), OptOptions::from(scn.cfg, Mode::FdCris));
  CHECK(r.best.theta_t.head(4).norm() == 0.0);
  CHECK(r.best.theta_r.tail(4).norm() == 0.0);
  CHECK(std::isfinite(cris_sum_se(scn, r.best).sum_se));
}

TEST_CASE("checkpoints are written") {
  const Scenario scn = Scenario::build(oracle::small_config(6, 2, 2));
  OptOptions opt = OptOptions::from(scn.cfg);
  opt.epsilon = 1e-300;
  opt.max_iter = 4;
  opt.checkpoint_every = 2;
  opt.checkpoint = std::filesystem::temp_directory_path() / "stars_test_checkpoint.json";
  prog_ram(scn, random_pbm(4, 1), opt);
  std::ifstream is(*opt.checkpoint);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"iteration\": 4") != std::string::npos);
  std::filesystem::remove(*opt.checkpoint);
}

TEST_CASE("invalid optimizer inputs") {
  const Scenario scn = Scenario::build(oracle::small_config(6, 2, 2));
  OptOptions opt = OptOptions::from(scn.cfg);
  CHECK_THROWS_AS(prog_ram(scn, random_pbm(5, 1), opt), Error);
  opt.max_iter = 0;
  CHECK_THROWS_AS(prog_ram(scn, random_pbm(4, 1), opt), Error);
}
