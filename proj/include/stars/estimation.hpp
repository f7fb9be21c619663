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

#include "stars/types.hpp"

#include <vector>

namespace stars {

/// MMSE statistics of one cascaded channel with covariance R observed in white
/// noise of variance rho per entry after de-spreading.
struct EstimationBlock {
  cmat Q;    // (R + rho I)^-1
  cmat Psi;  // R Q R, covariance of the estimate
  cmat E;    // R - Psi, covariance of the error
};

/// Per-user statistics for both directions of the current PBM.
struct EstimationStats {
  std::vector<cmat> Q_ul, Psi_ul, E_ul;  // M_R x M_R
  std::vector<cmat> Q_dl, Psi_dl, E_dl;  // M_T x M_T
  cmat Psi_sum;                          // sum_j Psi_dl[j]
};

/// Noise level rho = sigma2 / (tau * p_train); +inf when no training energy.
double estimation_noise(double sigma2, int tau, double p_train);

/// Uplink statistics through a Cholesky factorization of R + rho I.
EstimationBlock ul_estimation_stats(const cmat& R_ul_k, double sigma2_u, int tau_up, double p_train);

/// Downlink counterpart (same algebra on M_T x M_T matrices).
EstimationBlock dl_estimation_stats(const cmat& R_dl_k, double sigma2_d, int tau_dp, double p_train);

/// Returns R Q r_obs.
cvec mmse_estimate(const cvec& r_obs, const cmat& R, const cmat& Q);

/// Eigendecomposition R = U diag(lambda) U^H of a fixed BS correlation matrix.
/// Every cascaded covariance is a nonnegative multiple of such a matrix, so
/// its statistics follow from scalar maps of lambda.
struct SpectralBasis {
  cmat U;
  rvec lambda;

  static SpectralBasis of(const cmat& R);

  cmat compose(const rvec& d) const { return U * d.asDiagonal() * U.adjoint(); }

  /// Statistics of R = scale * U diag(lambda) U^H with noise level rho.
  EstimationBlock stats(double scale, double rho) const;
};

}  // namespace stars
