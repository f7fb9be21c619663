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

#include <string>
#include <vector>

namespace stars {

/// Closed-form SINR terms of one user. Downlink values use the rescaled form
/// (numerator tr^2(Psi_k)); multiply both by p_b / tr(Psi_sum) for the
/// physical form, which leaves gamma_d unchanged.
struct UserTerms {
  double S_u = 0.0, I_u = 0.0;
  double S_d = 0.0, I_d = 0.0;

  // Uplink interference split: I_u = mix + si + li - self + noise.
  double I_u_mix = 0.0;    // tr(Psi_ul R_ul_sum)
  double I_u_si = 0.0;     // BS self-interference through the surface
  double I_u_li = 0.0;     // BS loop interference
  double I_u_self = 0.0;   // p_uk tr(Psi_ul^2)
  double I_u_noise = 0.0;  // sigma2 tr(Psi_ul)

  // Downlink interference split: I_d = mix + iui + surface - self + noise.
  double I_d_mix = 0.0;      // tr(R_k Psi_sum)
  double I_d_iui = 0.0;      // direct inter-user channels (sigma_kj)
  double I_d_surface = 0.0;  // user-to-user leakage through the surface
  double I_d_self = 0.0;     // tr(Psi_k^2)
  double I_d_noise = 0.0;    // sigma2 tr(Psi_sum) / p_b

  double gamma_u = 0.0, gamma_d = 0.0;
  double se_u = 0.0, se_d = 0.0;
};

struct SEReport {
  Mode mode = Mode::FdStars;
  std::vector<UserTerms> users;
  double zeta = 0.0;     // (tau_c - tau_up - tau_dp) / tau_c
  double prelog_u = 0.0;  // pre-log applied to the uplink sum
  double prelog_d = 0.0;
  double beta = 0.0;     // K / tr(Psi_sum)
  double T = 0.0;        // tr(Psi_sum)
  double se_ul = 0.0;
  double se_dl = 0.0;
  double sum_se = 0.0;
  std::uint64_t config_hash = 0;
  std::string provenance = "closed_form";

  std::string csv_row() const;
  static std::string csv_header(int K);
  std::string to_json() const;
};

double ul_signal(int k, const EstimationStats& est, const Scenario& scn);
double ul_interference(int k, const StatisticalState& st, const Scenario& scn, Mode mode = Mode::FdStars);
double dl_signal(int k, const EstimationStats& est);
double dl_interference(int k, const StatisticalState& st, const Scenario& scn, Mode mode = Mode::FdStars);

/// Physical-form downlink terms: p_b / tr(Psi_sum) times the rescaled ones.
double dl_signal_physical(int k, const StatisticalState& st, const Scenario& scn);
double dl_interference_physical(int k, const StatisticalState& st, const Scenario& scn, Mode mode = Mode::FdStars);

/// Full evaluation for a mode. FD_STARS and RANDOM_PBM share the full-duplex
/// expressions; HD_STARS and FD_CRIS dispatch to the functions below.
SEReport sum_se(const Scenario& scn, const PBM& pbm, Mode mode = Mode::FdStars);
SEReport sum_se(const Scenario& scn, const StatisticalState& st, Mode mode);

/// Half-duplex baseline: no BS self/loop interference in the uplink, no UE
/// loop interference (sigma_kk) in the downlink, pre-log zeta/2 per direction.
SEReport hd_sum_se(const Scenario& scn, const PBM& pbm);

/// Reflect-only plus transmit-only surfaces with N/2 elements each. `pbm` uses
/// the split layout of pbm.hpp; co-channel leakage is limited to same-region
/// users.
SEReport cris_sum_se(const Scenario& scn, const PBM& pbm);
SEReport cris_sum_se(const Scenario& scn, const cvec& phases_r, const cvec& phases_t);

/// Builds the split-layout PBM from the two half-surface coefficient vectors.
PBM cris_pbm(const cvec& phases_r, const cvec& phases_t);

/// Sum SE only (the optimization objective).
double objective(const Scenario& scn, const PBM& pbm, Mode mode = Mode::FdStars);

/// Whether user j's uplink leaks to user k's downlink through the surface.
bool surface_leak_active(const Scenario& scn, Mode mode, int k, int j);

}  // namespace stars
