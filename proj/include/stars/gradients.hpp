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

#pragma once

#include "stars/scenario.hpp"
#include "stars/spectral_efficiency.hpp"

#include <vector>

namespace stars {

/// Gradient with respect to the conjugated coefficients: for a real function f,
/// df = 2 Re(g_r^H dtheta_r + g_t^H dtheta_t), so theta + mu g increases f.
struct Gradient {
  cvec g_r;
  cvec g_t;

  static Gradient zero(int N) { return {cvec::Zero(N), cvec::Zero(N)}; }
  Gradient& operator+=(const Gradient& o) {
    g_r += o.g_r;
    g_t += o.g_t;
    return *this;
  }
  Gradient scaled(double s) const { return {s * g_r, s * g_t}; }
  double squared_norm() const { return g_r.squaredNorm() + g_t.squaredNorm(); }
};

/// Helper matrices and scalars shared by all term gradients of one PBM.
struct GradientWorkspace {
  Mode mode = Mode::FdStars;
  int N = 0;
  cvec diag_Ar, diag_At;  // diag(R_s Theta_m R_s)

  std::vector<cmat> C_ul, C_dl;
  std::vector<cmat> B1, B2, B3;  // uplink helpers, M_R x M_R
  std::vector<cmat> Xi;          // M_T x M_T
  std::vector<std::vector<cmat>> Lul_kj, Ldl_kj;
  std::vector<cmat> B_dl;
  rvec nu_ul, nu_dl, chi_ul, chi1, chi2;
  double varpi = 0.0;

  static GradientWorkspace build(const Scenario& scn, const StatisticalState& st, const PBM& pbm,
                                 Mode mode = Mode::FdStars);

  const cvec& diag_A(Region w) const { return w == Region::Reflection ? diag_Ar : diag_At; }
};

Gradient grad_S_ul(int k, const GradientWorkspace& ws, const Scenario& scn);
Gradient grad_S_dl(int k, const GradientWorkspace& ws, const Scenario& scn);
Gradient grad_I_ul(int k, const GradientWorkspace& ws, const StatisticalState& st, const Scenario& scn);
Gradient grad_I_dl(int k, const GradientWorkspace& ws, const StatisticalState& st, const Scenario& scn);

/// Quotient-rule assembly of the sum-SE gradient from the term gradients.
/// For FD_CRIS the idle half of each coefficient vector is zeroed.
Gradient grad_objective(const Scenario& scn, const StatisticalState& st, const GradientWorkspace& ws,
                        const SEReport& rep);

/// Convenience: builds state, report and workspace for `pbm`.
Gradient grad_objective(const Scenario& scn, const PBM& pbm, Mode mode = Mode::FdStars);

/// Central finite differences of `objective` along every real and imaginary
/// coordinate, mapped to the conjugate-gradient convention.
Gradient numeric_gradient(const Scenario& scn, const PBM& pbm, Mode mode = Mode::FdStars, double h = 1e-6);

}  // namespace stars
