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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace stars {

/// Hermitian square roots of the correlation matrices, computed once.
struct ChannelFactors {
  cmat sqrt_Rb, sqrt_Rbt, sqrt_Rs;
  static ChannelFactors of(const CorrelationSet& corr);
};

/// One draw of every small-scale channel.
struct ChannelRealization {
  cmat G;    // N x M_T, BS transmit array -> surface
  cmat G_t;  // M_R x N, surface -> BS receive array
  cmat h;    // K x N, row k is h_k (surface -> user k)
  cmat h_t;  // N x K, column k is the uplink channel of user k
  cmat G_b;  // M_R x M_T loop-interference channel
  cmat H;    // K x K inter-user channels, 0 across regions
};

using Rng = std::mt19937_64;

/// Independent stream for realization `index` of a run seeded with `seed`.
Rng substream(std::uint64_t seed, std::uint64_t index);

ChannelRealization draw_channels(const Scenario& scn, const ChannelFactors& f, Rng& rng);

/// De-spread training observations. `r_ul[k]` observes the uplink cascaded
/// channel of user k (length M_R); `r_dl[k]` observes the conjugate-transposed
/// downlink cascaded channel (length M_T) under the mirrored protocol.
struct TrainingObservation {
  std::vector<cvec> r_ul, r_dl;
  std::vector<cvec> u_ul, u_dl;  // the true cascaded channels
};

/// Columns k = 0..K-1 of the tau x tau DFT matrix, each entry of modulus
/// sqrt(p_train).
cmat pilot_book(int tau, int K, double p_train);

/// Implements the training phase; `noise_free` skips the noise draws.
TrainingObservation simulate_training(const ChannelRealization& real, const PBM& pbm, const Scenario& scn, Rng& rng,
                                      bool noise_free = false);

/// A Monte-Carlo estimate with its standard error.
struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

/// Channel law used by the Monte-Carlo engine.
///
/// `Physical` draws the cascaded links from the shared surface channels, so
/// users' cascaded channels are dependent and non-Gaussian. `GaussianSurrogate`
/// draws every cascaded link as an independent Gaussian with the same
/// covariance; this is the law under which the closed forms are exact.
enum class ChannelModel { Physical, GaussianSurrogate };

std::string_view to_string(ChannelModel m);

/// Monte-Carlo counterparts of every closed-form term of one user, in the
/// physical downlink scaling.
struct McUserTerms {
  Estimate S_u, I_u, var_u, mui_u, si_u, li_u, noise_u;
  Estimate S_d, I_d, var_d, mui_d, iui_d, surface_d;
  double noise_d = 0.0;
  Estimate gamma_u, gamma_d;
};

struct McReport {
  std::vector<McUserTerms> users;
  Estimate beta;
  Estimate sum_se;
  int n = 0;
};

/// Runs `n` realizations of training and data transmission with MRC/MRT built
/// from the MMSE estimates. Realizations are split over `jobs` threads; the
/// result does not depend on `jobs`.
McReport mc_uatf_terms(const Scenario& scn, const PBM& pbm, int n, std::uint64_t seed, Mode mode = Mode::FdStars,
                       int jobs = 1, ChannelModel model = ChannelModel::Physical);

struct ValidationEntry {
  std::string term;  // e.g. "I_u"
  int user = -1;     // -1 for system-level entries
  double closed = 0.0;
  double mc_mean = 0.0;
  double mc_se = 0.0;
  bool pass = false;
  bool gating = true;  // diagnostic sub-terms do not decide the verdict
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool pass = false;
  int n = 0;
  double tolerance = 0.0;
  ChannelModel model = ChannelModel::Physical;
  std::string to_json() const;
};

/// Compares S/I totals per user, beta and the sum SE against Monte Carlo.
/// A term passes when |closed - mc| <= max(3 se, tolerance |closed|); beta
/// uses the 3 se bound only. Sub-terms are reported but do not gate.
/// `corrupt_term` (e.g. "I_u") doubles that closed-form value as a negative
/// control.
ValidationReport validate_closed_form(const Scenario& scn, const PBM& pbm, int n, double tolerance, std::uint64_t seed,
                                      Mode mode = Mode::FdStars, int jobs = 1, const std::string& corrupt_term = "",
                                      ChannelModel model = ChannelModel::Physical);

}  // namespace stars
