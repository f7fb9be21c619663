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

#include "stars/geometry.hpp"

#include <numbers>
#include <random>

namespace stars {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

void place_on_segment(std::vector<Point2>& out, int count, double x0, double x1, double y) {
  if (count == 1) {
    out.push_back({0.5 * (x0 + x1), y});
    return;
  }
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    out.push_back({x0 + f * (x1 - x0), y});
  }
}

void place_in_disk(std::vector<Point2>& out, int count, Point2 centre, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(u(rng));
    const double phi = 2.0 * std::numbers::pi * u(rng);
    out.push_back({centre.x + r * std::cos(phi), centre.y + r * std::sin(phi)});
  }
}

}  // namespace

UEGeometry place_users(const SystemConfig& cfg, GeometryKind kind) {
  UEGeometry g;
  g.positions.reserve(cfg.K());
  if (kind == GeometryKind::Line) {
    const double x0 = cfg.stars_x - 0.5 * cfg.d0_m;
    const double x1 = cfg.stars_x + 0.5 * cfg.d0_m;
    place_on_segment(g.positions, cfg.K_r, x0, x1, cfg.stars_y - 0.5 * cfg.d0_m);
    place_on_segment(g.positions, cfg.K_t, x0, x1, cfg.stars_y + 0.5 * cfg.d0_m);
  } else {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32), 0x6e6f6567u};
    std::mt19937_64 rng(seq);
    place_in_disk(g.positions, cfg.K_r, {cfg.stars_x, cfg.stars_y - cfg.d0_m}, cfg.circle_radius_m, rng);
    place_in_disk(g.positions, cfg.K_t, {cfg.stars_x, cfg.stars_y + cfg.d0_m}, cfg.circle_radius_m, rng);
  }
  g.region.assign(cfg.K_r, Region::Reflection);
  g.region.insert(g.region.end(), cfg.K_t, Region::Transmission);
  return g;
}

double path_loss(double distance_m, double d_H, double d_V, double alpha) {
  if (!(distance_m > 0.0)) throw Error(ErrorKind::InvalidArgument, "path_loss: distance must be positive");
  return d_H * d_V * std::pow(distance_m, -alpha);
}

LinkGains link_gains(const SystemConfig& cfg, const UEGeometry& geo) {
  const double s = cfg.element_size_m();
  const Point2 bs{cfg.bs_x, cfg.bs_y};
  const Point2 surface{cfg.stars_x, cfg.stars_y};
  LinkGains lg;
  lg.delta_g = path_loss(distance(bs, surface), s, s, cfg.alpha);
  lg.delta_gt = lg.delta_g;
  for (const auto& p : geo.positions) {
    const double pl = path_loss(distance(p, surface), s, s, cfg.alpha);
    lg.delta_h.push_back(pl);
    lg.delta_ht.push_back(pl);
  }
  return lg;
}

}  // namespace stars
