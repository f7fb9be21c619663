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

#include "stars/pbm.hpp"

#include "json.hpp"

#include <limits>
#include <numbers>
#include <random>

namespace stars {

double PBM::feasibility_error() const {
  if (theta_r.size() != theta_t.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index n = 0; n < theta_r.size(); ++n)
    worst = std::max(worst, std::abs(std::norm(theta_r(n)) + std::norm(theta_t(n)) - 1.0));
  return worst;
}

PBM project(const cvec& theta_hat_r, const cvec& theta_hat_t) {
  if (theta_hat_r.size() != theta_hat_t.size())
    throw Error(ErrorKind::InvalidArgument, "project: coefficient vectors differ in length");
  PBM p{cvec(theta_hat_r.size()), cvec(theta_hat_t.size())};
  const double half = std::sqrt(0.5);
  for (Eigen::Index n = 0; n < theta_hat_r.size(); ++n) {
    const double norm = std::sqrt(std::norm(theta_hat_r(n)) + std::norm(theta_hat_t(n)));
    if (norm == 0.0) {
      p.theta_r(n) = half;
      p.theta_t(n) = half;
    } else {
      p.theta_r(n) = theta_hat_r(n) / norm;
      p.theta_t(n) = theta_hat_t(n) / norm;
    }
  }
  return p;
}

PBM random_pbm(int N, std::uint64_t seed) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "random_pbm: N must be positive");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x70626dU};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> amp(0.0, 0.5 * std::numbers::pi);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  PBM p{cvec(N), cvec(N)};
  for (int n = 0; n < N; ++n) {
    const double psi = amp(rng);
    const double a = phase(rng);
    const double b = phase(rng);
    p.theta_r(n) = std::polar(std::cos(psi), a);
    p.theta_t(n) = std::polar(std::sin(psi), b);
  }
  return p;
}

rvec cris_mask_r(int N) {
  if (N < 2 || N % 2 != 0) throw Error(ErrorKind::InvalidArgument, "split surface needs an even element count");
  rvec m = rvec::Zero(N);
  m.head(cris_half(N)).setOnes();
  return m;
}

rvec cris_mask_t(int N) { return rvec::Ones(N) - cris_mask_r(N); }

PBM project_cris(const cvec& theta_hat_r, const cvec& theta_hat_t) {
  if (theta_hat_r.size() != theta_hat_t.size())
    throw Error(ErrorKind::InvalidArgument, "project_cris: coefficient vectors differ in length");
  const int N = static_cast<int>(theta_hat_r.size());
  const rvec mr = cris_mask_r(N);
  auto unit = [](cplx z) { return std::abs(z) == 0.0 ? cplx(1.0, 0.0) : z / std::abs(z); };
  PBM p{cvec::Zero(N), cvec::Zero(N)};
  for (int n = 0; n < N; ++n) {
    if (mr(n) > 0)
      p.theta_r(n) = unit(theta_hat_r(n));
    else
      p.theta_t(n) = unit(theta_hat_t(n));
  }
  return p;
}

PBM random_cris(int N, std::uint64_t seed) {
  const rvec mr = cris_mask_r(N);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x63726973U};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  PBM p{cvec::Zero(N), cvec::Zero(N)};
  for (int n = 0; n < N; ++n) {
    const cplx z = std::polar(1.0, phase(rng));
    if (mr(n) > 0)
      p.theta_r(n) = z;
    else
      p.theta_t(n) = z;
  }
  return p;
}

namespace {

nlohmann::json vec_to_json(const cvec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

cvec vec_from_json(const nlohmann::json& a) {
  if (!a.is_array()) throw Error(ErrorKind::Parse, "PBM JSON: coefficient list is not an array");
  cvec v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& e = a[i];
    if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::Parse, "PBM JSON: entries must be [re, im] pairs");
    v(static_cast<Eigen::Index>(i)) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  return v;
}

}  // namespace

std::string pbm_to_json(const PBM& p) {
  nlohmann::json j;
  j["N"] = p.size();
  j["theta_r"] = vec_to_json(p.theta_r);
  j["theta_t"] = vec_to_json(p.theta_t);
  return j.dump();
}

PBM pbm_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    PBM p{vec_from_json(j.at("theta_r")), vec_from_json(j.at("theta_t"))};
    if (p.theta_r.size() != p.theta_t.size())
      throw Error(ErrorKind::Parse, "PBM JSON: theta_r and theta_t differ in length");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("PBM JSON: ") + e.what());
  }
}

}  // namespace stars
