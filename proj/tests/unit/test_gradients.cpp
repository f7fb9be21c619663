#include "stars/gradients.hpp"
#include "stars/optimizer.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace stars;

namespace {

double rel_err(const Gradient& a, const std::pair<cvec, cvec>& n) {
  const double scale = std::max(n.first.cwiseAbs().maxCoeff(), n.second.cwiseAbs().maxCoeff());
  const double diff = std::max((a.g_r - n.first).cwiseAbs().maxCoeff(), (a.g_t - n.second).cwiseAbs().maxCoeff());
  return scale > 0 ? diff / scale : diff;
}

using TermFn = std::function<double(const SEReport&, int)>;
using TermGrad = std::function<Gradient(int, const GradientWorkspace&, const StatisticalState&, const Scenario&)>;

void check_term(const Scenario& scn, Mode mode, const TermFn& value, const TermGrad& grad, std::uint64_t seed) {
  const PBM p = random_pbm(scn.cfg.N(), seed);
  const StatisticalState st = build_state(scn, p);
  const GradientWorkspace ws = GradientWorkspace::build(scn, st, p, mode);
  for (int k = 0; k < scn.K(); ++k) {
    const auto fd = oracle::fd_gradient([&](const PBM& q) { return value(sum_se(scn, q, mode), k); }, p);
    CHECK(rel_err(grad(k, ws, st, scn), fd) <= 1e-5);
  }
}

Scenario term_scenario() {
  SystemConfig c = oracle::small_config(6, 5, 1, 2, 1);
  return Scenario::build(c);
}

}  // namespace

TEST_CASE("uplink signal gradient") {
  const Scenario scn = term_scenario();
  check_term(
      scn, Mode::FdStars, [](const SEReport& r, int k) { return r.users[k].S_u; },
      [](int k, const GradientWorkspace& ws, const StatisticalState&, const Scenario& s) { return grad_S_ul(k, ws, s); },
      1);
  const PBM p = random_pbm(scn.cfg.N(), 2);
  const StatisticalState st = build_state(scn, p);
  const GradientWorkspace ws = GradientWorkspace::build(scn, st, p);
  CHECK(grad_S_ul(0, ws, scn).g_t.norm() == 0.0);
}

TEST_CASE("uplink interference gradient") {
  check_term(
      term_scenario(), Mode::FdStars, [](const SEReport& r, int k) { return r.users[k].I_u; },
      [](int k, const GradientWorkspace& ws, const StatisticalState& st, const Scenario& s) {
        return grad_I_ul(k, ws, st, s);
      },
      3);
}

TEST_CASE("uplink interference gradient without BS transmission") {
  Scenario scn = term_scenario();
  scn.cfg.p_b_dBm = -INFINITY;
  scn.cfg.sigma2_L_dB = -INFINITY;
  check_term(
      scn, Mode::FdStars, [](const SEReport& r, int k) { return r.users[k].I_u; },
      [](int k, const GradientWorkspace& ws, const StatisticalState& st, const Scenario& s) {
        return grad_I_ul(k, ws, st, s);
      },
      4);
}

TEST_CASE("downlink signal and interference gradients") {
  const Scenario scn = term_scenario();
  check_term(
      scn, Mode::FdStars, [](const SEReport& r, int k) { return r.users[k].S_d; },
      [](int k, const GradientWorkspace& ws, const StatisticalState&, const Scenario& s) { return grad_S_dl(k, ws, s); },
      5);
  check_term(
      scn, Mode::FdStars, [](const SEReport& r, int k) { return r.users[k].I_d; },
      [](int k, const GradientWorkspace& ws, const StatisticalState& st, const Scenario& s) {
        return grad_I_dl(k, ws, st, s);
      },
      6);
}

TEST_CASE("downlink interference gradient without uplink power or noise") {
  Scenario scn = term_scenario();
  scn.p_u.setZero();
  scn.cfg.sigma2_kj_dB = -INFINITY;
  check_term(
      scn, Mode::FdStars, [](const SEReport& r, int k) { return r.users[k].I_d; },
      [](int k, const GradientWorkspace& ws, const StatisticalState& st, const Scenario& s) {
        return grad_I_dl(k, ws, st, s);
      },
      7);
}

TEST_CASE("end-to-end sum SE gradient in every mode") {
  const Scenario scn = Scenario::build(oracle::small_config(8, 2, 4));
  for (Mode mode : {Mode::FdStars, Mode::HdStars, Mode::FdCris}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const PBM p = random_init(mode, 8, seed);
      auto fd = oracle::fd_gradient([&](const PBM& q) { return objective(scn, q, mode); }, p);
      if (mode == Mode::FdCris) {
        // only the active half of each coefficient vector is a free variable
        fd.first = fd.first.cwiseProduct(cris_mask_r(8).cast<cplx>());
        fd.second = fd.second.cwiseProduct(cris_mask_t(8).cast<cplx>());
      }
      const Gradient g = grad_objective(scn, p, mode);
      INFO(to_string(mode) << " seed " << seed);
      CHECK(rel_err(g, fd) <= 1e-5);
    }
  }
}

TEST_CASE("split surface gradient vanishes on idle elements") {
  const Scenario scn = Scenario::build(oracle::small_config(8, 2, 4));
  const Gradient g = grad_objective(scn, random_cris(8, 1), Mode::FdCris);
  CHECK(g.g_r.tail(4).norm() == 0.0);
  CHECK(g.g_t.head(4).norm() == 0.0);
}

TEST_CASE("library finite differences agree with the test oracle") {
  const Scenario scn = Scenario::build(oracle::small_config(6, 2, 2));
  const PBM p = random_pbm(4, 9);
  const Gradient lib = numeric_gradient(scn, p);
  const auto ref = oracle::fd_gradient([&](const PBM& q) { return objective(scn, q); }, p);
  CHECK(rel_err(lib, ref) < 1e-9);
}

TEST_CASE("degenerate zero-power instance has a zero gradient") {
  Scenario scn = Scenario::build(oracle::small_config(4, 2, 2));
  scn.cfg.p_b_dBm = -INFINITY;
  scn.p_u.setZero();
  const Gradient g = grad_objective(scn, random_pbm(4, 1));
  CHECK(g.squared_norm() == 0.0);
}
