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

#include "stars/estimation.hpp"

#include <Eigen/Cholesky>

#include <limits>

namespace stars {

double estimation_noise(double sigma2, int tau, double p_train) {
  if (tau < 1) throw Error(ErrorKind::InvalidArgument, "estimation: pilot length must be positive");
  if (!(p_train > 0.0)) return std::numeric_limits<double>::infinity();
  return sigma2 / (tau * p_train);
}

namespace {

EstimationBlock llt_stats(const cmat& R, double rho) {
  const Eigen::Index M = R.rows();
  if (R.cols() != M) throw Error(ErrorKind::InvalidArgument, "estimation: covariance must be square");
  EstimationBlock b;
  if (std::isinf(rho)) {
    b.Q = cmat::Zero(M, M);
    b.Psi = cmat::Zero(M, M);
    b.E = R;
    return b;
  }
  const cmat H = 0.5 * (R + R.adjoint()) + rho * cmat::Identity(M, M);
  Eigen::LLT<cmat> llt(H);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::Numeric, "estimation: regularized covariance not positive definite");
  b.Q = llt.solve(cmat::Identity(M, M));
  b.Q = 0.5 * (b.Q + b.Q.adjoint());
  b.Psi = R * b.Q * R;
  b.Psi = 0.5 * (b.Psi + b.Psi.adjoint());
  b.E = R - b.Psi;
  return b;
}

}  // namespace

EstimationBlock ul_estimation_stats(const cmat& R_ul_k, double sigma2_u, int tau_up, double p_train) {
  return llt_stats(R_ul_k, estimation_noise(sigma2_u, tau_up, p_train));
}

EstimationBlock dl_estimation_stats(const cmat& R_dl_k, double sigma2_d, int tau_dp, double p_train) {
  return llt_stats(R_dl_k, estimation_noise(sigma2_d, tau_dp, p_train));
}

cvec mmse_estimate(const cvec& r_obs, const cmat& R, const cmat& Q) {
  if (R.cols() != Q.rows() || Q.cols() != r_obs.size())
    throw Error(ErrorKind::InvalidArgument, "mmse_estimate: dimension mismatch");
  return R * (Q * r_obs);
}

SpectralBasis SpectralBasis::of(const cmat& R) {
  Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (R + R.adjoint()));
  if (es.info() != Eigen::Success) throw Error(ErrorKind::Numeric, "eigendecomposition failed");
  return {es.eigenvectors(), es.eigenvalues().cwiseMax(0.0)};
}

EstimationBlock SpectralBasis::stats(double scale, double rho) const {
  const Eigen::Index M = lambda.size();
  const rvec r = scale * lambda;
  rvec q(M), psi(M);
  for (Eigen::Index i = 0; i < M; ++i) {
    if (std::isinf(rho)) {
      q(i) = 0.0;
      psi(i) = 0.0;
    } else {
      q(i) = 1.0 / (r(i) + rho);
      psi(i) = r(i) * r(i) * q(i);
    }
  }
  return {compose(q), compose(psi), compose(r - psi)};
}

}  // namespace stars
