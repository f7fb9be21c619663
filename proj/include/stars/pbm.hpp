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
#include <string>

namespace stars {

/// Energy-splitting coefficients of the surface: reflection and transmission
/// coefficient per element, |theta_r[n]|^2 + |theta_t[n]|^2 = 1.
///
/// A conventional reflect-only / transmit-only pair with N/2 elements each is
/// stored in the same layout: the first N/2 elements (row-major) are the
/// reflecting surface and carry theta_t = 0, the rest transmit with theta_r = 0.
struct PBM {
  cvec theta_r;
  cvec theta_t;

  int size() const { return static_cast<int>(theta_r.size()); }

  /// Largest violation of the unit-energy constraint over the elements.
  double feasibility_error() const;
};

/// Euclidean projection onto the feasible set. A pair that is zero in both
/// entries maps to (sqrt(0.5), sqrt(0.5)).
PBM project(const cvec& theta_hat_r, const cvec& theta_hat_t);
inline PBM project(const PBM& p) { return project(p.theta_r, p.theta_t); }

/// Random feasible point: amplitudes (cos psi, sin psi) with psi ~ U[0, pi/2],
/// independent phases ~ U[0, 2 pi).
PBM random_pbm(int N, std::uint64_t seed);

/// Number of reflecting elements in the split layout.
inline int cris_half(int N) { return N / 2; }

/// Projection for the split layout: each active coefficient is scaled to unit
/// modulus (zero maps to 1), inactive ones are forced to 0. Throws for odd N.
PBM project_cris(const cvec& theta_hat_r, const cvec& theta_hat_t);

/// Split-layout point with uniform random phases.
PBM random_cris(int N, std::uint64_t seed);

/// Active-element masks of the split layout (1 on the active half).
rvec cris_mask_r(int N);
rvec cris_mask_t(int N);

/// JSON document {"N": n, "theta_r": [[re, im], ...], "theta_t": [...]}.
std::string pbm_to_json(const PBM& p);
PBM pbm_from_json(const std::string& text);

}  // namespace stars
