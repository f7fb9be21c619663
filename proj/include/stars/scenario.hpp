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

#include "stars/config.hpp"
#include "stars/correlation.hpp"
#include "stars/estimation.hpp"
#include "stars/geometry.hpp"
#include "stars/pbm.hpp"

#include <vector>

namespace stars {

/// Everything about an experiment that does not depend on the PBM.
struct Scenario {
  SystemConfig cfg;
  UEGeometry geo;
  CorrelationSet corr;
  SpectralBasis basis_ul;  // of R_bt
  SpectralBasis basis_dl;  // of R_b
  rmat sigma_kj;           // K x K inter-user channel variances (0 across regions)
  rvec p_u;                // per-user data power

  int K() const { return cfg.K(); }
  Region region(int k) const { return geo.region[static_cast<std::size_t>(k)]; }

  /// Builds geometry and correlation from the config. The surface correlation
  /// can be swapped afterwards through `set_surface_correlation`.
  static Scenario build(const SystemConfig& cfg);

  void set_surface_correlation(const cmat& R_s);
};

/// Statistical state of one PBM: trace factors, cascaded covariances and MMSE
/// statistics for every user.
struct StatisticalState {
  double t_r = 0.0;  // tr(A_r Theta_r^H)
  double t_t = 0.0;  // tr(A_t Theta_t^H)
  rvec a_ul;         // R_ul[k] = a_ul[k] * R_bt
  rvec a_dl;         // R_dl[k] = a_dl[k] * R_b
  std::vector<cmat> R_ul, R_dl;
  cmat R_ul_sum;  // sum_j p_uj R_ul[j]
  EstimationStats est;
  double T = 0.0;  // tr(Psi_sum)

  double t_of(Region w) const { return w == Region::Reflection ? t_r : t_t; }
};

/// Structured path: one eigendecomposition per BS array, scalar maps per user.
StatisticalState build_state(const Scenario& scn, const PBM& pbm);

/// Reference path through a Cholesky factorization per user.
StatisticalState build_state_direct(const Scenario& scn, const PBM& pbm);

}  // namespace stars
