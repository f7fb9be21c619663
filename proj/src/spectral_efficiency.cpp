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

#include "stars/spectral_efficiency.hpp"

#include "json.hpp"

#include <cstdio>

namespace stars {

namespace {

double tr_prod(const cmat& A, const cmat& B) { return A.cwiseProduct(B.transpose()).sum().real(); }

void check_nonnegative(double I, double scale, const char* what) {
  if (I < -1e-9 * std::max(scale, 1e-300)) throw Error(ErrorKind::Numeric, std::string(what) + " is negative");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool surface_leak_active(const Scenario& scn, Mode mode, int k, int j) {
  return mode != Mode::FdCris || scn.region(k) == scn.region(j);
}

double ul_signal(int k, const EstimationStats& est, const Scenario& scn) {
  const double t = est.Psi_ul[k].trace().real();
  return scn.p_u(k) * t * t;
}

namespace {

void fill_ul(UserTerms& u, int k, const StatisticalState& st, const Scenario& scn, Mode mode) {
  const auto& c = scn.cfg;
  const auto& g = scn.corr.gains;
  const cmat& psi = st.est.Psi_ul[k];
  u.S_u = ul_signal(k, st.est, scn);
  u.I_u_mix = tr_prod(psi, st.R_ul_sum);
  u.I_u_si = u.I_u_li = 0.0;
  const double p_b = c.p_b();
  if (mode != Mode::HdStars && st.T > 0.0 && p_b > 0.0) {
    const double common = p_b / st.T * tr_prod(psi, scn.corr.R_bt) * tr_prod(scn.corr.R_b, st.est.Psi_sum);
    u.I_u_si = common * g.delta_g * g.delta_gt * st.t_r;
    u.I_u_li = common * c.sigma2_L();
  }
  u.I_u_self = scn.p_u(k) * tr_prod(psi, psi);
  u.I_u_noise = c.sigma2() * psi.trace().real();
  u.I_u = u.I_u_mix + u.I_u_si + u.I_u_li - u.I_u_self + u.I_u_noise;
  check_nonnegative(u.I_u, u.I_u_mix + u.I_u_si + u.I_u_li + u.I_u_noise, "uplink interference");
}

void fill_dl(UserTerms& u, int k, const StatisticalState& st, const Scenario& scn, Mode mode) {
  const auto& c = scn.cfg;
  const auto& g = scn.corr.gains;
  const double p_b = c.p_b();
  u.S_d = u.I_d = u.I_d_mix = u.I_d_iui = u.I_d_surface = u.I_d_self = u.I_d_noise = 0.0;
  if (!(p_b > 0.0) || !(st.T > 0.0)) return;
  const cmat& psi = st.est.Psi_dl[k];
  const double trpsi = psi.trace().real();
  const double tw = st.t_of(scn.region(k));
  u.S_d = trpsi * trpsi;
  u.I_d_mix = tr_prod(st.R_dl[k], st.est.Psi_sum);
  double iui = 0.0, surf = 0.0;
  for (int j = 0; j < scn.K(); ++j) {
    if (!(mode == Mode::HdStars && j == k)) iui += scn.p_u(j) * scn.sigma_kj(k, j);
    if (surface_leak_active(scn, mode, k, j)) surf += scn.p_u(j) * g.delta_h[k] * g.delta_ht[j] * tw;
  }
  u.I_d_iui = st.T / p_b * iui;
  u.I_d_surface = st.T / p_b * surf;
  u.I_d_self = tr_prod(psi, psi);
  u.I_d_noise = c.sigma2() * st.T / p_b;
  u.I_d = u.I_d_mix + u.I_d_iui + u.I_d_surface - u.I_d_self + u.I_d_noise;
  check_nonnegative(u.I_d, u.I_d_mix + u.I_d_iui + u.I_d_surface + u.I_d_noise, "downlink interference");
}

double ratio(double S, double I) { return S > 0.0 ? S / I : 0.0; }

}  // namespace

double ul_interference(int k, const StatisticalState& st, const Scenario& scn, Mode mode) {
  UserTerms u;
  fill_ul(u, k, st, scn, mode);
  return u.I_u;
}

double dl_signal(int k, const EstimationStats& est) {
  const double t = est.Psi_dl[k].trace().real();
  return t * t;
}

double dl_interference(int k, const StatisticalState& st, const Scenario& scn, Mode mode) {
  UserTerms u;
  fill_dl(u, k, st, scn, mode);
  return u.I_d;
}

double dl_signal_physical(int k, const StatisticalState& st, const Scenario& scn) {
  if (!(st.T > 0.0)) return 0.0;
  return scn.cfg.p_b() / st.T * dl_signal(k, st.est);
}

double dl_interference_physical(int k, const StatisticalState& st, const Scenario& scn, Mode mode) {
  if (!(st.T > 0.0)) return scn.cfg.sigma2();
  return scn.cfg.p_b() / st.T * dl_interference(k, st, scn, mode);
}

SEReport sum_se(const Scenario& scn, const StatisticalState& st, Mode mode) {
  SEReport r;
  r.mode = mode;
  r.zeta = scn.cfg.zeta();
  r.prelog_u = r.prelog_d = mode == Mode::HdStars ? 0.5 * r.zeta : r.zeta;
  r.T = st.T;
  r.beta = st.T > 0.0 ? scn.K() / st.T : 0.0;
  r.config_hash = config_hash(scn.cfg);
  r.users.resize(scn.K());
  for (int k = 0; k < scn.K(); ++k) {
    UserTerms& u = r.users[k];
    fill_ul(u, k, st, scn, mode);
    fill_dl(u, k, st, scn, mode);
    u.gamma_u = ratio(u.S_u, u.I_u);
    u.gamma_d = ratio(u.S_d, u.I_d);
    u.se_u = r.prelog_u * std::log2(1.0 + u.gamma_u);
    u.se_d = r.prelog_d * std::log2(1.0 + u.gamma_d);
    r.se_ul += u.se_u;
    r.se_dl += u.se_d;
  }
  r.sum_se = r.se_ul + r.se_dl;
  return r;
}

SEReport sum_se(const Scenario& scn, const PBM& pbm, Mode mode) {
  if (mode == Mode::FdCris) return cris_sum_se(scn, pbm);
  return sum_se(scn, build_state(scn, pbm), mode);
}

SEReport hd_sum_se(const Scenario& scn, const PBM& pbm) { return sum_se(scn, build_state(scn, pbm), Mode::HdStars); }

PBM cris_pbm(const cvec& phases_r, const cvec& phases_t) {
  if (phases_r.size() != phases_t.size() || phases_r.size() == 0)
    throw Error(ErrorKind::InvalidArgument, "split surface halves must have equal, nonzero size");
  const Eigen::Index h = phases_r.size();
  PBM p{cvec::Zero(2 * h), cvec::Zero(2 * h)};
  p.theta_r.head(h) = phases_r;
  p.theta_t.tail(h) = phases_t;
  return p;
}

SEReport cris_sum_se(const Scenario& scn, const PBM& pbm) {
  const int N = pbm.size();
  const rvec mr = cris_mask_r(N);
  for (int n = 0; n < N; ++n) {
    const cplx active = mr(n) > 0 ? pbm.theta_r(n) : pbm.theta_t(n);
    const cplx idle = mr(n) > 0 ? pbm.theta_t(n) : pbm.theta_r(n);
    if (std::abs(std::abs(active) - 1.0) > 1e-9 || idle != cplx(0.0))
      throw Error(ErrorKind::InvalidArgument, "split surface coefficients must be unit-modulus on the active half");
  }
  return sum_se(scn, build_state(scn, pbm), Mode::FdCris);
}

SEReport cris_sum_se(const Scenario& scn, const cvec& phases_r, const cvec& phases_t) {
  return cris_sum_se(scn, cris_pbm(phases_r, phases_t));
}

double objective(const Scenario& scn, const PBM& pbm, Mode mode) {
  return sum_se(scn, build_state(scn, pbm), mode).sum_se;
}

std::string SEReport::csv_header(int K) {
  std::string h = "mode,config_hash";
  for (int k = 1; k <= K; ++k) h += ",gamma_u_" + std::to_string(k);
  for (int k = 1; k <= K; ++k) h += ",gamma_d_" + std::to_string(k);
  return h + ",se_ul,se_dl,sum_se";
}

std::string SEReport::csv_row() const {
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash));
  std::string row = std::string(to_string(mode)) + "," + hash;
  for (const auto& u : users) row += "," + fmt(u.gamma_u);
  for (const auto& u : users) row += "," + fmt(u.gamma_d);
  return row + "," + fmt(se_ul) + "," + fmt(se_dl) + "," + fmt(sum_se);
}

std::string SEReport::to_json() const {
  nlohmann::ordered_json j;
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash));
  j["mode"] = to_string(mode);
  j["config_hash"] = hash;
  j["provenance"] = provenance;
  j["zeta"] = zeta;
  j["prelog_u"] = prelog_u;
  j["prelog_d"] = prelog_d;
  j["beta"] = beta;
  j["se_ul"] = se_ul;
  j["se_dl"] = se_dl;
  j["sum_se"] = sum_se;
  auto& arr = j["users"] = nlohmann::ordered_json::array();
  for (const auto& u : users) {
    arr.push_back({{"S_u", u.S_u}, {"I_u", u.I_u}, {"S_d", u.S_d}, {"I_d", u.I_d},
                   {"gamma_u", u.gamma_u}, {"gamma_d", u.gamma_d}, {"se_u", u.se_u}, {"se_d", u.se_d}});
  }
  return j.dump(2);
}

}  // namespace stars
