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

#include "stars/gradients.hpp"

#include <numbers>

namespace stars {

namespace {

double tr_prod(const cmat& A, const cmat& B) { return A.cwiseProduct(B.transpose()).sum().real(); }

/// Q R X - Q R X R Q + X R Q: the matrix L with tr(X dPsi) = tr(L dR) for
/// Psi = R Q R and Q = (R + rho I)^-1.
cmat sandwich(const cmat& Q, const cmat& R, const cmat& X) {
  const cmat QR = Q * R;
  const cmat RQ = R * Q;
  return QR * X - QR * X * RQ + X * RQ;
}

Gradient along(const GradientWorkspace& ws, double c_r, double c_t) {
  return {c_r * ws.diag_Ar, c_t * ws.diag_At};
}

}  // namespace

GradientWorkspace GradientWorkspace::build(const Scenario& scn, const StatisticalState& st, const PBM& pbm, Mode mode) {
  const auto& c = scn.cfg;
  const auto& g = scn.corr.gains;
  const int K = scn.K();
  const double p_b = c.p_b();
  const double sigma2 = c.sigma2();
  const bool bs_terms = mode != Mode::HdStars && st.T > 0.0 && p_b > 0.0;
  const bool dl_active = st.T > 0.0 && p_b > 0.0;

  GradientWorkspace ws;
  ws.mode = mode;
  ws.N = pbm.size();
  ws.diag_Ar = stars::diag_A(scn.corr.K_s, pbm.theta_r);
  ws.diag_At = stars::diag_A(scn.corr.K_s, pbm.theta_t);

  const cmat& Rbt = scn.corr.R_bt;
  const cmat& Rb = scn.corr.R_b;
  const auto& e = st.est;
  const double tr_Rb_Psisum = tr_prod(Rb, e.Psi_sum);
  const double lossy = g.delta_g * g.delta_gt * st.t_r + c.sigma2_L();
  ws.varpi = bs_terms ? p_b / st.T * tr_Rb_Psisum * lossy : 0.0;

  ws.nu_ul.resize(K);
  ws.nu_dl.resize(K);
  ws.chi_ul.resize(K);
  ws.chi1.resize(K);
  ws.chi2.resize(K);
  const cmat I_T = cmat::Identity(c.M_T, c.M_T);
  for (int k = 0; k < K; ++k) {
    const cmat& Qt = e.Q_ul[k];
    const cmat& Rt = st.R_ul[k];
    const cmat& Pt = e.Psi_ul[k];
    ws.C_ul.push_back(sandwich(Qt, Rt, cmat::Identity(c.M_R, c.M_R)));
    ws.nu_ul(k) = 2.0 * g.delta_gt * g.delta_ht[k] * scn.p_u(k) * Pt.trace().real() * tr_prod(Rbt, ws.C_ul[k]);
    ws.B1.push_back(sandwich(Qt, Rt, st.R_ul_sum));
    ws.B2.push_back(ws.varpi * sandwich(Qt, Rt, Rbt));
    ws.B3.push_back(2.0 * scn.p_u(k) * sandwich(Qt, Rt, Pt));
    const double tr_Pt_Rbt = tr_prod(Pt, Rbt);
    if (bs_terms) {
      ws.Xi.push_back(p_b / st.T * tr_Pt_Rbt * lossy * (Rb - tr_Rb_Psisum / st.T * I_T));
      ws.chi_ul(k) = p_b * g.delta_g * g.delta_gt / st.T * tr_Pt_Rbt * tr_Rb_Psisum;
    } else {
      ws.Xi.push_back(cmat::Zero(c.M_T, c.M_T));
      ws.chi_ul(k) = 0.0;
    }

    const cmat& Q = e.Q_dl[k];
    const cmat& R = st.R_dl[k];
    const cmat& P = e.Psi_dl[k];
    ws.C_dl.push_back(sandwich(Q, R, I_T));
    ws.nu_dl(k) = 2.0 * g.delta_g * g.delta_h[k] * P.trace().real() * tr_prod(Rb, ws.C_dl[k]);
    ws.B_dl.push_back(2.0 * sandwich(Q, R, P));

    double chi1 = 0.0, leak = 0.0;
    if (dl_active) {
      const double tw = st.t_of(scn.region(k));
      for (int j = 0; j < K; ++j) {
        double term = 0.0;
        if (!(mode == Mode::HdStars && j == k)) term += scn.sigma_kj(k, j);
        if (surface_leak_active(scn, mode, k, j)) {
          term += g.delta_h[k] * g.delta_ht[j] * tw;
          leak += scn.p_u(j) * g.delta_ht[j];
        }
        chi1 += scn.p_u(j) * term;
      }
      ws.chi1(k) = (chi1 + sigma2) / p_b;
      ws.chi2(k) = g.delta_h[k] / p_b * st.T * leak;
    } else {
      ws.chi1(k) = 0.0;
      ws.chi2(k) = 0.0;
    }
  }

  ws.Lul_kj.assign(K, {});
  ws.Ldl_kj.assign(K, {});
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < K; ++j) {
      const cmat& Qj = e.Q_dl[j];
      const cmat& Rj = st.R_dl[j];
      ws.Lul_kj[k].push_back(bs_terms ? sandwich(Qj, Rj, ws.Xi[k]) : cmat::Zero(c.M_T, c.M_T));
      ws.Ldl_kj[k].push_back(sandwich(Qj, Rj, st.R_dl[k]));
    }
  return ws;
}

Gradient grad_S_ul(int k, const GradientWorkspace& ws, const Scenario&) { return along(ws, ws.nu_ul(k), 0.0); }

Gradient grad_S_dl(int k, const GradientWorkspace& ws, const Scenario& scn) {
  if (scn.region(k) == Region::Reflection) return along(ws, ws.nu_dl(k), 0.0);
  return along(ws, 0.0, ws.nu_dl(k));
}

Gradient grad_I_ul(int k, const GradientWorkspace& ws, const StatisticalState& st, const Scenario& scn) {
  const auto& g = scn.corr.gains;
  const cmat& Rbt = scn.corr.R_bt;
  const cmat& Rb = scn.corr.R_b;
  const double sigma2 = scn.cfg.sigma2();

  double sum_up = 0.0;
  for (int j = 0; j < scn.K(); ++j) sum_up += g.delta_ht[j] * scn.p_u(j);
  double c_r = g.delta_gt * g.delta_ht[k] *
                   tr_prod(Rbt, ws.B1[k] + ws.B2[k] - ws.B3[k] + sigma2 * ws.C_ul[k]) +
               g.delta_gt * sum_up * tr_prod(Rbt, st.est.Psi_ul[k]) + ws.chi_ul(k);
  double c_t = 0.0;
  for (int i = 0; i < scn.K(); ++i) {
    const double v = g.delta_g * g.delta_h[i] * tr_prod(Rb, ws.Lul_kj[k][i]);
    (scn.region(i) == Region::Reflection ? c_r : c_t) += v;
  }
  return along(ws, c_r, c_t);
}

Gradient grad_I_dl(int k, const GradientWorkspace& ws, const StatisticalState& st, const Scenario& scn) {
  const auto& g = scn.corr.gains;
  const cmat& Rb = scn.corr.R_b;
  if (!(st.T > 0.0) || !(scn.cfg.p_b() > 0.0)) return Gradient::zero(ws.N);
  double c[2] = {0.0, 0.0};
  const int wk = scn.region(k) == Region::Reflection ? 0 : 1;
  c[wk] += g.delta_g * g.delta_h[k] * tr_prod(Rb, st.est.Psi_sum - ws.B_dl[k]) + ws.chi2(k);
  for (int i = 0; i < scn.K(); ++i) {
    const int wi = scn.region(i) == Region::Reflection ? 0 : 1;
    c[wi] += g.delta_g * g.delta_h[i] * tr_prod(Rb, ws.Ldl_kj[k][i] + ws.chi1(k) * ws.C_dl[i]);
  }
  return along(ws, c[0], c[1]);
}

Gradient grad_objective(const Scenario& scn, const StatisticalState& st, const GradientWorkspace& ws,
                        const SEReport& rep) {
  const double log2e = std::numbers::log2e;
  Gradient total = Gradient::zero(ws.N);
  for (int k = 0; k < scn.K(); ++k) {
    const UserTerms& u = rep.users[k];
    if (u.I_u > 0.0 && u.S_u > 0.0) {
      const double w = rep.prelog_u * log2e / ((1.0 + u.gamma_u) * u.I_u * u.I_u);
      Gradient gS = grad_S_ul(k, ws, scn);
      Gradient gI = grad_I_ul(k, ws, st, scn);
      total += gS.scaled(w * u.I_u);
      total += gI.scaled(-w * u.S_u);
    }
    if (u.I_d > 0.0 && u.S_d > 0.0) {
      const double w = rep.prelog_d * log2e / ((1.0 + u.gamma_d) * u.I_d * u.I_d);
      Gradient gS = grad_S_dl(k, ws, scn);
      Gradient gI = grad_I_dl(k, ws, st, scn);
      total += gS.scaled(w * u.I_d);
      total += gI.scaled(-w * u.S_d);
    }
  }
  if (ws.mode == Mode::FdCris) {
    total.g_r = total.g_r.cwiseProduct(cris_mask_r(ws.N).cast<cplx>());
    total.g_t = total.g_t.cwiseProduct(cris_mask_t(ws.N).cast<cplx>());
  }
  return total;
}

Gradient grad_objective(const Scenario& scn, const PBM& pbm, Mode mode) {
  const StatisticalState st = build_state(scn, pbm);
  const SEReport rep = sum_se(scn, st, mode);
  const GradientWorkspace ws = GradientWorkspace::build(scn, st, pbm, mode);
  return grad_objective(scn, st, ws, rep);
}

Gradient numeric_gradient(const Scenario& scn, const PBM& pbm, Mode mode, double h) {
  const int N = pbm.size();
  Gradient g = Gradient::zero(N);
  auto f = [&](const PBM& p) { return objective(scn, p, mode); };
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < N; ++n) {
      double d[2];
      for (int part = 0; part < 2; ++part) {
        const cplx step = part == 0 ? cplx(h, 0.0) : cplx(0.0, h);
        PBM plus = pbm, minus = pbm;
        (m == 0 ? plus.theta_r : plus.theta_t)(n) += step;
        (m == 0 ? minus.theta_r : minus.theta_t)(n) -= step;
        d[part] = (f(plus) - f(minus)) / (2.0 * h);
      }
      (m == 0 ? g.g_r : g.g_t)(n) = 0.5 * cplx(d[0], d[1]);
    }
  if (mode == Mode::FdCris) {
    g.g_r = g.g_r.cwiseProduct(cris_mask_r(N).cast<cplx>());
    g.g_t = g.g_t.cwiseProduct(cris_mask_t(N).cast<cplx>());
  }
  return g;
}

}  // namespace stars
