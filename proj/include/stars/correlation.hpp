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
#include "stars/geometry.hpp"

namespace stars {

struct PBM;

/// Correlation of an N_h x N_v planar surface under isotropic scattering:
/// entry (n, m) = sinc(2 d_nm / lambda). Elements are indexed row-major with
/// the horizontal index running fastest.
cmat stars_correlation(int N_h, int N_v, double d_H, double d_V, double lambda_m);

/// Uniform-linear-array local scattering model. The angular average uses S
/// midpoint samples of [mean - spread, mean + spread].
cmat bs_correlation(int M, double spacing_frac, double angle_spread_deg, double mean_angle_deg, int S = 200);

/// Re-symmetrizes; if an eigenvalue lies below -1e-10 times the largest one,
/// negative eigenvalues are clipped and the unit diagonal restored.
cmat psd_repair(const cmat& R);

/// Hermitian PSD square root via eigendecomposition, eigenvalues clipped at 0.
cmat hermitian_sqrt(const cmat& R);

/// Deterministic second-order statistics shared by every PBM.
struct CorrelationSet {
  cmat R_b;    // BS transmit array, M_T x M_T
  cmat R_bt;   // BS receive array, M_R x M_R
  cmat R_s;    // surface, N x N
  rmat K_s;    // |R_s|^2 elementwise; tr(R_s diag(x) R_s diag(x)^H) = x^H K_s x
  LinkGains gains;
};

CorrelationSet build_correlation_set(const SystemConfig& cfg, const UEGeometry& geo);

/// tr(A Theta^H) with A = R_s Theta R_s, evaluated from the matrix product.
/// Throws Error(Numeric) if the imaginary part exceeds 1e-9 relative.
double trace_factor(const cmat& R_s, const cvec& theta);

/// Same quantity as `trace_factor` via the quadratic form x^H K_s x.
double trace_factor(const rmat& K_s, const cvec& theta);

/// diag(R_s Theta R_s) = K_s theta.
cvec diag_A(const rmat& K_s, const cvec& theta);

/// Uplink cascaded covariance of user k: delta_gt delta_ht[k] t_r R_bt.
cmat cascaded_ul_cov(const CorrelationSet& corr, const PBM& pbm, int k);

/// Downlink cascaded covariance of user k, using the coefficients of its region.
cmat cascaded_dl_cov(const CorrelationSet& corr, const PBM& pbm, Region region, int k);

}  // namespace stars
