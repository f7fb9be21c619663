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

#include "stars/correlation.hpp"

#include "stars/pbm.hpp"

#include <numbers>

namespace stars {

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

cmat stars_correlation(int N_h, int N_v, double d_H, double d_V, double lambda_m) {
  if (N_h < 1 || N_v < 1 || !(d_H > 0) || !(d_V > 0) || !(lambda_m > 0))
    throw Error(ErrorKind::InvalidArgument, "stars_correlation: arguments must be positive");
  const int N = N_h * N_v;
  cmat R(N, N);
  for (int n = 0; n < N; ++n) {
    const double xn = (n % N_h) * d_H;
    const double yn = (n / N_h) * d_V;
    for (int m = 0; m < N; ++m) {
      const double xm = (m % N_h) * d_H;
      const double ym = (m / N_h) * d_V;
      R(n, m) = sinc(2.0 * std::hypot(xn - xm, yn - ym) / lambda_m);
    }
  }
  return psd_repair(R);
}

cmat bs_correlation(int M, double spacing_frac, double angle_spread_deg, double mean_angle_deg, int S) {
  if (M < 1 || S < 1) throw Error(ErrorKind::InvalidArgument, "bs_correlation: M and S must be positive");
  const double deg = std::numbers::pi / 180.0;
  const double lo = (mean_angle_deg - angle_spread_deg) * deg;
  const double width = 2.0 * angle_spread_deg * deg;
  std::vector<double> sines(S);
  for (int s = 0; s < S; ++s) sines[s] = std::sin(lo + (s + 0.5) * width / S);

  // Toeplitz: only the first column needs the angular average.
  cvec first(M);
  for (int d = 0; d < M; ++d) {
    cplx acc = 0.0;
    for (double sphi : sines) acc += std::polar(1.0, 2.0 * std::numbers::pi * spacing_frac * d * sphi);
    first(d) = acc / static_cast<double>(S);
  }
  cmat R(M, M);
  for (int p = 0; p < M; ++p)
    for (int q = 0; q < M; ++q) R(p, q) = p >= q ? first(p - q) : std::conj(first(q - p));
  for (int p = 0; p < M; ++p) R(p, p) = 1.0;
  return psd_repair(R);
}

cmat psd_repair(const cmat& R) {
  cmat H = 0.5 * (R + R.adjoint());
  Eigen::SelfAdjointEigenSolver<cmat> es(H);
  const rvec& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() >= -1e-10 * top) return H;
  const rvec clipped = ev.cwiseMax(0.0);
  cmat P = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
  const rvec d = P.diagonal().real().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  P = d.asDiagonal() * P * d.asDiagonal();
  P = 0.5 * (P + P.adjoint());
  for (Eigen::Index i = 0; i < P.rows(); ++i) P(i, i) = 1.0;
  return P;
}

cmat hermitian_sqrt(const cmat& R) {
  Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (R + R.adjoint()));
  const rvec s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

CorrelationSet build_correlation_set(const SystemConfig& cfg, const UEGeometry& geo) {
  CorrelationSet c;
  c.R_b = bs_correlation(cfg.M_T, cfg.bs_spacing_frac, cfg.bs_angle_spread_deg, cfg.bs_mean_angle_deg,
                         cfg.bs_quad_points);
  c.R_bt = bs_correlation(cfg.M_R, cfg.bs_spacing_frac, cfg.bs_angle_spread_deg, cfg.bs_mean_angle_deg,
                          cfg.bs_quad_points);
  const double s = cfg.element_size_m();
  if (cfg.surface_correlation == SurfaceCorrelation::Identity)
    c.R_s = cmat::Identity(cfg.N(), cfg.N());
  else
    c.R_s = stars_correlation(cfg.N_h, cfg.N_v, s, s, cfg.lambda_m);
  c.K_s = c.R_s.cwiseAbs2();
  c.gains = link_gains(cfg, geo);
  return c;
}

double trace_factor(const cmat& R_s, const cvec& theta) {
  const cmat A = R_s * theta.asDiagonal() * R_s;
  const cplx t = (A * theta.conjugate().asDiagonal()).trace();
  const double scale = std::max(std::abs(t), 1e-300);
  if (std::abs(t.imag()) > 1e-9 * scale)
    throw Error(ErrorKind::Numeric, "trace factor has a non-negligible imaginary part");
  if (t.real() < -1e-12 * std::max(1.0, theta.squaredNorm()))
    throw Error(ErrorKind::Numeric, "trace factor is negative");
  return std::max(t.real(), 0.0);
}

double trace_factor(const rmat& K_s, const cvec& theta) {
  return std::max(0.0, (theta.adjoint() * (K_s.cast<cplx>() * theta))(0, 0).real());
}

cvec diag_A(const rmat& K_s, const cvec& theta) { return K_s.cast<cplx>() * theta; }

cmat cascaded_ul_cov(const CorrelationSet& corr, const PBM& pbm, int k) {
  const double t = trace_factor(corr.R_s, pbm.theta_r);
  return corr.gains.delta_gt * corr.gains.delta_ht.at(k) * t * corr.R_bt;
}

cmat cascaded_dl_cov(const CorrelationSet& corr, const PBM& pbm, Region region, int k) {
  const cvec& theta = region == Region::Reflection ? pbm.theta_r : pbm.theta_t;
  const double t = trace_factor(corr.R_s, theta);
  return corr.gains.delta_g * corr.gains.delta_h.at(k) * t * corr.R_b;
}

}  // namespace stars
