// SPDX-License-Identifier: Apache-2.0
//
// stars-fd: spectral-efficiency evaluation and passive-beamforming optimization
// for full-duplex massive-MIMO systems assisted by a simultaneously transmitting
// and reflecting surface.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "stars/scenario.hpp"

namespace stars {

Scenario Scenario::build(const SystemConfig& cfg) {
  cfg.validate();
  Scenario s;
  s.cfg = cfg;
  s.geo = place_users(cfg);
  s.corr = build_correlation_set(cfg, s.geo);
  s.basis_ul = SpectralBasis::of(s.corr.R_bt);
  s.basis_dl = SpectralBasis::of(s.corr.R_b);
  const int K = cfg.K();
  s.sigma_kj = rmat::Zero(K, K);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < K; ++j)
      if (s.geo.region[k] == s.geo.region[j]) s.sigma_kj(k, j) = cfg.sigma2_kj_same_region();
  s.p_u = rvec::Constant(K, cfg.p_u());
  return s;
}

void Scenario::set_surface_correlation(const cmat& R_s) {
  if (R_s.rows() != cfg.N() || R_s.cols() != cfg.N())
    throw Error(ErrorKind::InvalidArgument, "surface correlation has the wrong size");
  corr.R_s = R_s;
  corr.K_s = R_s.cwiseAbs2();
}

namespace {

StatisticalState trace_factors(const Scenario& scn, const PBM& pbm) {
  if (pbm.size() != scn.cfg.N()) throw Error(ErrorKind::InvalidArgument, "PBM length differs from the element count");
  const auto& g = scn.corr.gains;
  const int K = scn.K();
  StatisticalState st;
  st.t_r = trace_factor(scn.corr.K_s, pbm.theta_r);
  st.t_t = trace_factor(scn.corr.K_s, pbm.theta_t);
  st.a_ul.resize(K);
  st.a_dl.resize(K);
  for (int k = 0; k < K; ++k) {
    st.a_ul(k) = g.delta_gt * g.delta_ht[k] * st.t_r;
    st.a_dl(k) = g.delta_g * g.delta_h[k] * st.t_of(scn.region(k));
  }
  st.R_ul.resize(K);
  st.R_dl.resize(K);
  st.R_ul_sum = cmat::Zero(scn.cfg.M_R, scn.cfg.M_R);
  for (int k = 0; k < K; ++k) {
    st.R_ul[k] = st.a_ul(k) * scn.corr.R_bt;
    st.R_dl[k] = st.a_dl(k) * scn.corr.R_b;
    st.R_ul_sum += scn.p_u(k) * st.R_ul[k];
  }
  return st;
}

void push(EstimationStats& e, const EstimationBlock& ul, const EstimationBlock& dl) {
  e.Q_ul.push_back(ul.Q);
  e.Psi_ul.push_back(ul.Psi);
  e.E_ul.push_back(ul.E);
  e.Q_dl.push_back(dl.Q);
  e.Psi_dl.push_back(dl.Psi);
  e.E_dl.push_back(dl.E);
}

void finish(StatisticalState& st, int M_T) {
  st.est.Psi_sum = cmat::Zero(M_T, M_T);
  for (const auto& P : st.est.Psi_dl) st.est.Psi_sum += P;
  st.T = st.est.Psi_sum.trace().real();
}

}  // namespace

StatisticalState build_state(const Scenario& scn, const PBM& pbm) {
  StatisticalState st = trace_factors(scn, pbm);
  const auto& c = scn.cfg;
  const double rho_u = estimation_noise(c.sigma2(), c.tau_up, c.p_train());
  const double rho_d = estimation_noise(c.sigma2(), c.tau_dp, c.p_train());
  for (int k = 0; k < scn.K(); ++k)
    push(st.est, scn.basis_ul.stats(st.a_ul(k), rho_u), scn.basis_dl.stats(st.a_dl(k), rho_d));
  finish(st, c.M_T);
  return st;
}

StatisticalState build_state_direct(const Scenario& scn, const PBM& pbm) {
  StatisticalState st = trace_factors(scn, pbm);
  const auto& c = scn.cfg;
  for (int k = 0; k < scn.K(); ++k)
    push(st.est, ul_estimation_stats(st.R_ul[k], c.sigma2(), c.tau_up, c.p_train()),
         dl_estimation_stats(st.R_dl[k], c.sigma2(), c.tau_dp, c.p_train()));
  finish(st, c.M_T);
  return st;
}

}  // namespace stars
