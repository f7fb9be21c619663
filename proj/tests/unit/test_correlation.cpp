#include "stars/correlation.hpp"
#include "stars/pbm.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace stars;

TEST_CASE("surface correlation entries") {
  const double lambda = 0.1;
  const cmat R = stars_correlation(3, 2, lambda / 4, lambda / 4, lambda);
  CHECK(R(0, 0).real() == Catch::Approx(1.0));
  CHECK(R(0, 1).real() == Catch::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
  const cmat Rh = stars_correlation(2, 1, lambda / 2, lambda / 2, lambda);
  CHECK(std::abs(Rh(0, 1)) < 1e-15);
  // diagonal neighbour at distance sqrt(2) * lambda / 4
  const double x = std::numbers::sqrt2 / 2.0;
  CHECK(R(0, 4).real() == Catch::Approx(std::sin(std::numbers::pi * x) / (std::numbers::pi * x)).epsilon(1e-12));
  CHECK((R - R.adjoint()).norm() == 0.0);
}

TEST_CASE("BS correlation against direct quadrature") {
  const cmat R = bs_correlation(2, 0.5, 10.0, 0.0, 100);
  // composite Simpson over the angular interval with many nodes
  const int n = 20000;
  const double a = -10.0 * std::numbers::pi / 180.0, b = -a, h = (b - a) / n;
  cplx acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * std::polar(1.0, std::numbers::pi * std::sin(a + i * h));
  }
  acc *= h / 3.0 / (b - a);
  CHECK(std::abs(R(1, 0) - acc) < 1e-4);
  CHECK(R(0, 0).real() == 1.0);
}

TEST_CASE("zero angular spread gives a rank-one matrix with unit-modulus entries") {
  const cmat R = bs_correlation(6, 0.5, 0.0, 25.0);
  for (Eigen::Index i = 0; i < R.size(); ++i) CHECK(std::abs(R(i)) == Catch::Approx(1.0));
  Eigen::SelfAdjointEigenSolver<cmat> es(R);
  CHECK(es.eigenvalues()(4) < 1e-9);
}

TEST_CASE("psd repair clips negative eigenvalues and keeps a unit diagonal") {
  cmat R(3, 3);
  R << 1.0, 0.99, -0.99, 0.99, 1.0, 0.99, -0.99, 0.99, 1.0;
  const cmat P = psd_repair(R);
  Eigen::SelfAdjointEigenSolver<cmat> es(P);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
  for (int i = 0; i < 3; ++i) CHECK(P(i, i).real() == Catch::Approx(1.0));
  const cmat ok = cmat::Identity(3, 3);
  CHECK((psd_repair(ok) - ok).norm() == 0.0);
}

TEST_CASE("hermitian square root squares back") {
  std::mt19937_64 rng(3);
  const cmat R = oracle::random_correlation(6, rng);
  const cmat S = hermitian_sqrt(R);
  CHECK((S * S - R).norm() < 1e-12);
  CHECK((S - S.adjoint()).norm() < 1e-12);
}

TEST_CASE("trace factor routes agree and reduce to the amplitude sum for R_s = I") {
  std::mt19937_64 rng(5);
  const cmat Rs = oracle::random_correlation(8, rng);
  const PBM p = random_pbm(8, 11);
  const rmat K = Rs.cwiseAbs2();
  CHECK(trace_factor(Rs, p.theta_r) == Catch::Approx(trace_factor(K, p.theta_r)).epsilon(1e-12));

  const cvec theta = cvec::Constant(4, std::sqrt(0.5));
  CHECK(trace_factor(cmat(cmat::Identity(4, 4)), theta) == Catch::Approx(2.0));
  CHECK(trace_factor(K, cvec(cvec::Zero(8))) == 0.0);
}

TEST_CASE("phase rotations leave the cascaded covariance unchanged when R_s = I") {
  SystemConfig c = oracle::small_config(4, 2, 2);
  c.surface_correlation = SurfaceCorrelation::Identity;
  const CorrelationSet corr = build_correlation_set(c, place_users(c));
  PBM p = random_pbm(4, 1);
  const cmat before = cascaded_dl_cov(corr, p, Region::Transmission, 2);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  for (int n = 0; n < 4; ++n) p.theta_t(n) *= std::polar(1.0, u(rng));
  CHECK((cascaded_dl_cov(corr, p, Region::Transmission, 2) - before).norm() <= 1e-12 * before.norm());
  p.theta_t.setZero();
  CHECK(cascaded_dl_cov(corr, p, Region::Transmission, 2).norm() == 0.0);
}

namespace {

struct SmallChannels {
  SystemConfig cfg;
  CorrelationSet corr;
  cmat sRs, sRb, sRbt;
};

SmallChannels small_channels(std::uint64_t seed) {
  SmallChannels s;
  s.cfg = oracle::small_config(3, 2, 2, 1, 1);
  s.corr = build_correlation_set(s.cfg, place_users(s.cfg));
  std::mt19937_64 rng(seed);
  s.corr.R_s = oracle::random_correlation(4, rng);
  s.corr.K_s = s.corr.R_s.cwiseAbs2();
  s.sRs = hermitian_sqrt(s.corr.R_s);
  s.sRb = hermitian_sqrt(s.corr.R_b);
  s.sRbt = hermitian_sqrt(s.corr.R_bt);
  return s;
}

cmat gaussian(int r, int c, std::mt19937_64& rng) {
  cmat X(r, c);
  for (int j = 0; j < c; ++j) X.col(j) = oracle::complex_normal(r, rng);
  return X;
}

}  // namespace

TEST_CASE("uplink cascaded covariance matches simulated channels") {
  const SmallChannels s = small_channels(21);
  const PBM p = random_pbm(4, 4);
  const auto& g = s.corr.gains;
  std::mt19937_64 rng(77);
  oracle::CovarianceAccumulator acc(3);
  for (int i = 0; i < 10000; ++i) {
    const cmat Gt = std::sqrt(g.delta_gt) * s.sRbt * gaussian(3, 4, rng) * s.sRs;
    const cvec ht = std::sqrt(g.delta_ht[0]) * s.sRs * oracle::complex_normal(4, rng);
    acc.add(Gt * p.theta_r.asDiagonal() * ht);
  }
  // entrywise bound widened for the number of entries compared
  CHECK(acc.max_z(cascaded_ul_cov(s.corr, p, 0)) < 4.5);
}

TEST_CASE("downlink cascaded covariance matches simulated channels") {
  const SmallChannels s = small_channels(22);
  const PBM p = random_pbm(4, 5);
  const auto& g = s.corr.gains;
  std::mt19937_64 rng(78);
  oracle::CovarianceAccumulator acc(3);
  for (int i = 0; i < 10000; ++i) {
    const cmat G = std::sqrt(g.delta_g) * s.sRs * gaussian(4, 3, rng) * s.sRb;
    const cvec h = std::sqrt(g.delta_h[1]) * s.sRs.transpose() * oracle::complex_normal(4, rng);
    // u = h^T Theta_t G is a row; collect u^H
    acc.add((h.transpose() * p.theta_t.asDiagonal() * G).adjoint());
  }
  CHECK(acc.max_z(cascaded_dl_cov(s.corr, p, Region::Transmission, 1)) < 4.5);
}
