#include "stars/monte_carlo.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace stars;

namespace {

Scenario mc_scenario(bool white = false) {
  SystemConfig c = oracle::small_config(6, 2, 2);
  if (white) c.surface_correlation = SurfaceCorrelation::Identity;
  Scenario scn = Scenario::build(c);
  if (white) {
    scn.corr.R_b = cmat::Identity(6, 6);
    scn.corr.R_bt = cmat::Identity(6, 6);
  }
  return scn;
}

const ValidationEntry& entry(const ValidationReport& r, const std::string& term, int user) {
  for (const auto& e : r.entries)
    if (e.term == term && e.user == user) return e;
  throw std::runtime_error("missing entry " + term);
}

bool within_3se(const ValidationEntry& e) { return std::abs(e.closed - e.mc_mean) <= 3.0 * e.mc_se; }

}  // namespace

TEST_CASE("white channels have path-loss variance") {
  const Scenario scn = mc_scenario(true);
  const ChannelFactors f = ChannelFactors::of(scn.corr);
  const auto& g = scn.corr.gains;
  oracle::CovarianceAccumulator acc(4);
  for (int i = 0; i < 10000; ++i) {
    Rng rng = substream(5, i);
    const ChannelRealization r = draw_channels(scn, f, rng);
    acc.add(r.G.col(0));
  }
  CHECK(acc.max_z(g.delta_g * cmat::Identity(4, 4)) < 4.5);
}

TEST_CASE("uplink user channels carry the surface correlation") {
  const Scenario scn = mc_scenario();
  const ChannelFactors f = ChannelFactors::of(scn.corr);
  oracle::CovarianceAccumulator acc(4);
  for (int i = 0; i < 10000; ++i) {
    Rng rng = substream(6, i);
    acc.add(draw_channels(scn, f, rng).h_t.col(1));
  }
  CHECK(acc.max_z(scn.corr.gains.delta_ht[1] * scn.corr.R_s) < 4.5);
}

TEST_CASE("surface channel second moment follows the Kronecker structure") {
  const Scenario scn = mc_scenario();
  const ChannelFactors f = ChannelFactors::of(scn.corr);
  oracle::CovarianceAccumulator acc(4);
  for (int i = 0; i < 10000; ++i) {
    Rng rng = substream(7, i);
    const cmat G = draw_channels(scn, f, rng).G;
    acc.add(G * (scn.corr.R_b.col(0) / 1.0));  // a fixed combination of columns
  }
  const cvec w = scn.corr.R_b.col(0);
  const double scale = (w.adjoint() * scn.corr.R_b.transpose() * w)(0, 0).real();
  CHECK(acc.max_z(scn.corr.gains.delta_g * scale * scn.corr.R_s) < 4.5);
}

TEST_CASE("draws are reproducible and inter-region user channels vanish") {
  const Scenario scn = mc_scenario();
  const ChannelFactors f = ChannelFactors::of(scn.corr);
  Rng a = substream(9, 3), b = substream(9, 3);
  const ChannelRealization x = draw_channels(scn, f, a), y = draw_channels(scn, f, b);
  CHECK(x.G == y.G);
  CHECK(x.H == y.H);
  CHECK(x.H(0, 2) == cplx(0.0));
  CHECK(x.H(3, 1) == cplx(0.0));
  CHECK(x.H(0, 1) != cplx(0.0));
}

TEST_CASE("pilot book is orthogonal with energy tau p") {
  const cmat X = pilot_book(5, 3, 0.2);
  const cmat gram = X.transpose() * X.conjugate();
  CHECK((gram - 5 * 0.2 * cmat::Identity(3, 3)).norm() < 1e-12);
  CHECK_THROWS_AS(pilot_book(2, 3, 1.0), Error);
}

TEST_CASE("noise-free training recovers the cascaded channels") {
  const Scenario scn = mc_scenario();
  const ChannelFactors f = ChannelFactors::of(scn.corr);
  Rng rng = substream(1, 0);
  const ChannelRealization r = draw_channels(scn, f, rng);
  const PBM p = random_pbm(4, 2);
  const TrainingObservation t = simulate_training(r, p, scn, rng, true);
  const cvec u0 = r.G_t * p.theta_r.asDiagonal() * r.h_t.col(0);
  CHECK((t.r_ul[0] - u0).norm() <= 1e-12 * u0.norm());
  for (int k = 0; k < scn.K(); ++k) {
    CHECK((t.r_ul[k] - t.u_ul[k]).norm() <= 1e-12 * t.u_ul[k].norm());
    CHECK((t.r_dl[k] - t.u_dl[k]).norm() <= 1e-12 * t.u_dl[k].norm());
  }
}

TEST_CASE("de-spread training noise has variance sigma2 / (tau p)") {
  const Scenario scn = mc_scenario();
  ChannelRealization zero;
  zero.G = cmat::Zero(4, 6);
  zero.G_t = cmat::Zero(6, 4);
  zero.h = cmat::Zero(4, 4);
  zero.h_t = cmat::Zero(4, 4);
  const PBM p = random_pbm(4, 2);
  oracle::CovarianceAccumulator acc(6);
  for (int i = 0; i < 10000; ++i) {
    Rng rng = substream(2, i);
    acc.add(simulate_training(zero, p, scn, rng).r_ul[1]);
  }
  const double rho = scn.cfg.sigma2() / (scn.cfg.tau_up * scn.cfg.p_train());
  CHECK(acc.max_z(rho * cmat::Identity(6, 6)) < 4.5);
}

TEST_CASE("surrogate channels reproduce every closed-form term but the variance") {
  const Scenario scn = mc_scenario();
  const PBM p = random_pbm(4, 3);
  const ValidationReport rep =
      validate_closed_form(scn, p, 20000, 0.0, 11, Mode::FdStars, 4, "", ChannelModel::GaussianSurrogate);
  for (const auto& e : rep.entries) {
    if (e.term == "var_u" || e.term == "var_d" || e.term.rfind("gamma", 0) == 0 || e.term == "sum_se" ||
        e.term == "I_u" || e.term == "I_d")
      continue;
    INFO(e.term << " user " << e.user << " closed " << e.closed << " mc " << e.mc_mean << " se " << e.mc_se);
    CHECK(std::abs(e.closed - e.mc_mean) <= 3.5 * e.mc_se);
  }
}

TEST_CASE("surrogate variance term equals p tr(Psi R)") {
  // For Gaussian channels the estimate-times-estimate product fluctuates as
  // well; the exact variance is p tr(Psi R), not p (tr(Psi R) - tr(Psi^2)).
  const Scenario scn = mc_scenario();
  const PBM p = random_pbm(4, 3);
  const McReport mc = mc_uatf_terms(scn, p, 20000, 12, Mode::FdStars, 4, ChannelModel::GaussianSurrogate);
  const StatisticalState st = build_state(scn, p);
  for (int k = 0; k < scn.K(); ++k) {
    const double exact_u = scn.p_u(k) * (st.est.Psi_ul[k] * st.R_ul[k]).trace().real();
    const double exact_d = scn.cfg.p_b() / st.T * (st.est.Psi_dl[k] * st.R_dl[k]).trace().real();
    CHECK(std::abs(mc.users[k].var_u.mean - exact_u) <= 3.5 * mc.users[k].var_u.se);
    CHECK(std::abs(mc.users[k].var_d.mean - exact_d) <= 3.5 * mc.users[k].var_d.se);
  }
}

TEST_CASE("physical channels reproduce the terms that only need second moments") {
  const Scenario scn = mc_scenario();
  const PBM p = random_pbm(4, 5);
  const ValidationReport rep = validate_closed_form(scn, p, 10000, 0.0, 13, Mode::FdStars, 4);
  CHECK(within_3se(entry(rep, "beta", -1)));
  for (int k = 0; k < scn.K(); ++k)
    for (const char* t : {"S_u", "S_d", "li_u", "noise_u", "iui_d", "surface_d"}) {
      INFO(t << " user " << k);
      CHECK(std::abs(entry(rep, t, k).closed - entry(rep, t, k).mc_mean) <= 3.5 * entry(rep, t, k).mc_se);
    }
}

TEST_CASE("half-duplex and split-surface Monte Carlo follow the mode") {
  const Scenario scn = mc_scenario();
  const ValidationReport hd =
      validate_closed_form(scn, random_pbm(4, 2), 2000, 0.05, 3, Mode::HdStars, 2, "", ChannelModel::GaussianSurrogate);
  CHECK(entry(hd, "si_u", 0).mc_mean == 0.0);
  CHECK(entry(hd, "li_u", 0).mc_mean == 0.0);
  const ValidationReport cr =
      validate_closed_form(scn, random_cris(4, 2), 2000, 0.05, 3, Mode::FdCris, 2, "", ChannelModel::GaussianSurrogate);
  CHECK(within_3se(entry(cr, "surface_d", 0)));
}

TEST_CASE("without surface coefficients every path term is zero on both sides") {
  const Scenario scn = mc_scenario();
  const PBM zero{cvec::Zero(4), cvec::Zero(4)};
  const ValidationReport rep = validate_closed_form(scn, zero, 200, 0.05, 1);
  for (const char* t : {"S_u", "S_d", "var_u", "mui_u", "si_u", "li_u", "mui_d", "surface_d"}) {
    CHECK(entry(rep, t, 0).closed == 0.0);
    CHECK(entry(rep, t, 0).mc_mean == 0.0);
  }
}

TEST_CASE("a doubled closed-form term fails validation") {
  const Scenario scn = mc_scenario();
  const PBM p = random_pbm(4, 3);
  const ValidationReport ok =
      validate_closed_form(scn, p, 4000, 0.05, 2, Mode::FdStars, 2, "", ChannelModel::GaussianSurrogate);
  const ValidationReport bad =
      validate_closed_form(scn, p, 4000, 0.05, 2, Mode::FdStars, 2, "I_u", ChannelModel::GaussianSurrogate);
  CHECK(ok.pass);
  CHECK_FALSE(bad.pass);
  CHECK(bad.to_json().find("\"pass\": false") != std::string::npos);
}

TEST_CASE("Monte Carlo results do not depend on the thread count") {
  const Scenario scn = mc_scenario();
  const PBM p = random_pbm(4, 1);
  const ValidationReport a = validate_closed_form(scn, p, 300, 0.05, 4, Mode::FdStars, 1);
  const ValidationReport b = validate_closed_form(scn, p, 300, 0.05, 4, Mode::FdStars, 3);
  CHECK(a.to_json() == b.to_json());
  CHECK_THROWS_AS(mc_uatf_terms(scn, p, 50, 1), Error);
}
