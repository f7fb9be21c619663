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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace stars {

enum class GeometryKind { Line, Circular };

/// Spatial correlation model at the surface. `Identity` is the uncorrelated
/// reference used to check phase invariance.
enum class SurfaceCorrelation { Sinc, Identity };

/// Step-size rule of the projected gradient ascent.
enum class StepRule { Bb2, Bb1, Fixed };

/// All scalar parameters of one experiment.
///
/// Powers are stored in dBm and noise ratios in dB as they appear in config
/// documents; the accessors return linear values in watts. A power of -inf dBm
/// is an exact zero, which the evaluators accept (the validator does not).
struct SystemConfig {
  int M_T = 128;
  int M_R = 128;
  int N_h = 12;
  int N_v = 12;
  int K_r = 2;
  int K_t = 2;

  int tau_c = 200;
  int tau_up = 4;
  int tau_dp = 4;

  double p_b_dBm = 30.0;
  double p_u_dBm = 15.0;
  double p_train_dBm = 15.0;
  double sigma2_dBm = -94.0;
  double sigma2_L_dB = 0.0;   // relative to sigma2
  double sigma2_kj_dB = 0.0;  // relative to sigma2, same-region users only

  double alpha = 2.6;
  double lambda_m = 0.1;
  double elem_size_frac = 0.25;  // d_H = d_V = elem_size_frac * lambda

  GeometryKind geometry_kind = GeometryKind::Line;
  double bs_x = 0.0;
  double bs_y = 0.0;
  double stars_x = 50.0;
  double stars_y = 10.0;
  double d0_m = 20.0;

  double mu_1 = 500.0;
  double epsilon = 1e-5;
  std::uint64_t seed = 1;

  // Optional knobs (not required in a config document).
  double circle_radius_m = 10.0;
  double bs_spacing_frac = 0.5;
  double bs_angle_spread_deg = 20.0;
  double bs_mean_angle_deg = 0.0;
  int bs_quad_points = 200;
  SurfaceCorrelation surface_correlation = SurfaceCorrelation::Sinc;
  int max_iter = 500;
  StepRule step_rule = StepRule::Bb2;

  int N() const { return N_h * N_v; }
  int K() const { return K_r + K_t; }

  double p_b() const { return dbm_to_watts(p_b_dBm); }
  double p_u() const { return dbm_to_watts(p_u_dBm); }
  double p_train() const { return dbm_to_watts(p_train_dBm); }
  double sigma2() const { return dbm_to_watts(sigma2_dBm); }
  double sigma2_L() const { return sigma2() * db_to_ratio(sigma2_L_dB); }
  double sigma2_kj_same_region() const { return sigma2() * db_to_ratio(sigma2_kj_dB); }
  double element_size_m() const { return elem_size_frac * lambda_m; }

  /// Pre-log factor: fraction of the coherence block left for data.
  double zeta() const { return static_cast<double>(tau_c - tau_up - tau_dp) / tau_c; }

  /// Throws Error(Config) naming the first violated invariant.
  void validate() const;

  /// Full-size setup of the reference scenario.
  static SystemConfig paper();
  /// Reduced setup (M = 32, N = 36, K = 4) used by tests and quick runs.
  static SystemConfig desk();
};

/// Names of the keys a config document must define.
const std::vector<std::string>& required_config_keys();

/// Names of every key accepted by `apply_override`.
std::vector<std::string> known_config_keys();

/// Sets one key from its textual value. Throws Error(Config) for an unknown key
/// and Error(Parse) for a malformed value; does not validate invariants.
void apply_override(SystemConfig& cfg, const std::string& key, const std::string& value);

/// Parses a flat `key = value` document (`#` starts a comment). Every required
/// key must be present; the result is validated.
SystemConfig parse_config(const std::string& text);
SystemConfig load_config(const std::filesystem::path& path);

/// Serializes every key in a form `parse_config` reads back.
std::string to_config_text(const SystemConfig& cfg);

/// Stable 64-bit FNV-1a hash of `to_config_text`, used to tag reports.
std::uint64_t config_hash(const SystemConfig& cfg);

}  // namespace stars
