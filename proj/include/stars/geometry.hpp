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

#include <vector>

namespace stars {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point2 a, Point2 b);

/// User positions and their side of the surface. Reflection-region users come
/// first, then transmission-region users.
struct UEGeometry {
  std::vector<Point2> positions;
  std::vector<Region> region;

  int size() const { return static_cast<int>(positions.size()); }
};

/// Places the K_r + K_t users.
///
/// Line setup: reflection users on the horizontal segment of length d0 centred
/// below the surface at y_S - d0/2, endpoints included; transmission users on
/// the mirrored segment at y_S + d0/2. A single user sits at the midpoint.
/// Circular setup: uniform in a disk of radius `circle_radius_m` centred d0
/// below (reflection) or above (transmission) the surface, drawn from `seed`.
UEGeometry place_users(const SystemConfig& cfg, GeometryKind kind);
inline UEGeometry place_users(const SystemConfig& cfg) { return place_users(cfg, cfg.geometry_kind); }

/// Distance-based path loss d_H * d_V * distance^(-alpha).
double path_loss(double distance_m, double d_H, double d_V, double alpha);

/// Large-scale gains of every link through the surface.
struct LinkGains {
  double delta_g = 0.0;           // BS transmit array -> surface
  double delta_gt = 0.0;          // surface -> BS receive array
  std::vector<double> delta_h;    // surface -> user k (downlink)
  std::vector<double> delta_ht;   // user k -> surface (uplink)
};

LinkGains link_gains(const SystemConfig& cfg, const UEGeometry& geo);

}  // namespace stars
