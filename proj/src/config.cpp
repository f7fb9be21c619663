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

#include "stars/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace stars {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v.empty()) throw Error(ErrorKind::Parse, "non-numeric value for key '" + key + "': empty");
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || errno == ERANGE)
    throw Error(ErrorKind::Parse, "non-numeric value for key '" + key + "': '" + v + "'");
  return d;
}

long long parse_integer(const std::string& key, const std::string& value) {
  const double d = parse_double(key, value);
  if (!std::isfinite(d) || std::floor(d) != d)
    throw Error(ErrorKind::Parse, "non-integer value for key '" + key + "': '" + trim(value) + "'");
  return static_cast<long long>(d);
}

std::string fmt(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct KeySpec {
  bool required;
  std::function<void(SystemConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const SystemConfig&)> get;
};

template <class T>
KeySpec int_key(T SystemConfig::*field, bool required = true) {
  return {required,
          [field](SystemConfig& c, const std::string& k, const std::string& v) {
            c.*field = static_cast<T>(parse_integer(k, v));
          },
          [field](const SystemConfig& c) { return std::to_string(c.*field); }};
}

KeySpec real_key(double SystemConfig::*field, bool required = true) {
  return {required,
          [field](SystemConfig& c, const std::string& k, const std::string& v) { c.*field = parse_double(k, v); },
          [field](const SystemConfig& c) { return fmt(c.*field); }};
}

const std::map<std::string, KeySpec>& key_table() {
  static const std::map<std::string, KeySpec> table = [] {
    std::map<std::string, KeySpec> t;
    t["M_T"] = int_key(&SystemConfig::M_T);
    t["M_R"] = int_key(&SystemConfig::M_R);
    t["N_h"] = int_key(&SystemConfig::N_h);
    t["N_v"] = int_key(&SystemConfig::N_v);
    t["K_r"] = int_key(&SystemConfig::K_r);
    t["K_t"] = int_key(&SystemConfig::K_t);
    t["tau_c"] = int_key(&SystemConfig::tau_c);
    t["tau_up"] = int_key(&SystemConfig::tau_up);
    t["tau_dp"] = int_key(&SystemConfig::tau_dp);
    t["p_b_dBm"] = real_key(&SystemConfig::p_b_dBm);
    t["p_u_dBm"] = real_key(&SystemConfig::p_u_dBm);
    t["p_train_dBm"] = real_key(&SystemConfig::p_train_dBm);
    t["sigma2_dBm"] = real_key(&SystemConfig::sigma2_dBm);
    t["sigma2_L_dB"] = real_key(&SystemConfig::sigma2_L_dB);
    t["sigma2_kj_dB"] = real_key(&SystemConfig::sigma2_kj_dB);
    t["alpha"] = real_key(&SystemConfig::alpha);
    t["lambda_m"] = real_key(&SystemConfig::lambda_m);
    t["elem_size_frac"] = real_key(&SystemConfig::elem_size_frac);
    t["geometry_kind"] = {true,
                          [](SystemConfig& c, const std::string& k, const std::string& v) {
                            const std::string s = trim(v);
                            if (s == "line")
                              c.geometry_kind = GeometryKind::Line;
                            else if (s == "circular")
                              c.geometry_kind = GeometryKind::Circular;
                            else
                              throw Error(ErrorKind::Parse, "invalid value for key '" + k + "': '" + s +
                                                                "' (expected line|circular)");
                          },
                          [](const SystemConfig& c) {
                            return std::string(c.geometry_kind == GeometryKind::Line ? "line" : "circular");
                          }};
    t["bs_x"] = real_key(&SystemConfig::bs_x);
    t["bs_y"] = real_key(&SystemConfig::bs_y);
    t["stars_x"] = real_key(&SystemConfig::stars_x);
    t["stars_y"] = real_key(&SystemConfig::stars_y);
    t["d0_m"] = real_key(&SystemConfig::d0_m);
    t["mu_1"] = real_key(&SystemConfig::mu_1);
    t["epsilon"] = real_key(&SystemConfig::epsilon);
    t["seed"] = {true,
                 [](SystemConfig& c, const std::string& k, const std::string& v) {
                   const std::string s = trim(v);
                   char* end = nullptr;
                   errno = 0;
                   const unsigned long long u = std::strtoull(s.c_str(), &end, 10);
                   if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE)
                     throw Error(ErrorKind::Parse, "non-numeric value for key '" + k + "': '" + s + "'");
                   c.seed = u;
                 },
                 [](const SystemConfig& c) { return std::to_string(c.seed); }};

    t["circle_radius_m"] = real_key(&SystemConfig::circle_radius_m, false);
    t["bs_spacing_frac"] = real_key(&SystemConfig::bs_spacing_frac, false);
    t["bs_angle_spread_deg"] = real_key(&SystemConfig::bs_angle_spread_deg, false);
    t["bs_mean_angle_deg"] = real_key(&SystemConfig::bs_mean_angle_deg, false);
    t["bs_quad_points"] = int_key(&SystemConfig::bs_quad_points, false);
    t["max_iter"] = int_key(&SystemConfig::max_iter, false);
    t["surface_correlation"] = {false,
                                [](SystemConfig& c, const std::string& k, const std::string& v) {
                                  const std::string s = trim(v);
                                  if (s == "sinc")
                                    c.surface_correlation = SurfaceCorrelation::Sinc;
                                  else if (s == "identity")
                                    c.surface_correlation = SurfaceCorrelation::Identity;
                                  else
                                    throw Error(ErrorKind::Parse, "invalid value for key '" + k + "': '" + s +
                                                                      "' (expected sinc|identity)");
                                },
                                [](const SystemConfig& c) {
                                  return std::string(c.surface_correlation == SurfaceCorrelation::Sinc ? "sinc"
                                                                                                       : "identity");
                                }};
    t["step_rule"] = {false,
                      [](SystemConfig& c, const std::string& k, const std::string& v) {
                        const std::string s = trim(v);
                        if (s == "bb2")
                          c.step_rule = StepRule::Bb2;
                        else if (s == "bb1")
                          c.step_rule = StepRule::Bb1;
                        else if (s == "fixed")
                          c.step_rule = StepRule::Fixed;
                        else
                          throw Error(ErrorKind::Parse,
                                      "invalid value for key '" + k + "': '" + s + "' (expected bb2|bb1|fixed)");
                      },
                      [](const SystemConfig& c) {
                        switch (c.step_rule) {
                          case StepRule::Bb2: return std::string("bb2");
                          case StepRule::Bb1: return std::string("bb1");
                          case StepRule::Fixed: return std::string("fixed");
                        }
                        return std::string("bb2");
                      }};
    return t;
  }();
  return table;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(ErrorKind::Config, msg);
}

}  // namespace

void SystemConfig::validate() const {
  require(M_T >= 1, "M_T: must be at least 1");
  require(M_R >= 1, "M_R: must be at least 1");
  require(N_h >= 1, "N_h: must be at least 1");
  require(N_v >= 1, "N_v: must be at least 1");
  require(K_r >= 1, "K_r: must be at least 1");
  require(K_t >= 1, "K_t: must be at least 1");
  require(tau_c >= 1, "tau_c: must be positive");
  require(tau_up >= K(), "tau_up: pilot length below user count");
  require(tau_dp >= K(), "tau_dp: pilot length below user count");
  require(tau_up + tau_dp < tau_c, "tau_c: pilot lengths leave no data channel uses");
  const auto positive = [](double w) { return std::isfinite(w) && w > 0.0; };
  require(positive(p_b()), "p_b_dBm: power must be positive and finite");
  require(positive(p_u()), "p_u_dBm: power must be positive and finite");
  require(positive(p_train()), "p_train_dBm: power must be positive and finite");
  require(positive(sigma2()), "sigma2_dBm: noise power must be positive and finite");
  require(std::isfinite(sigma2_L_dB), "sigma2_L_dB: must be finite");
  require(std::isfinite(sigma2_kj_dB) || sigma2_kj_dB < 0, "sigma2_kj_dB: must be finite or -inf");
  require(std::isfinite(alpha) && alpha > 0.0, "alpha: must be positive");
  require(std::isfinite(lambda_m) && lambda_m > 0.0, "lambda_m: must be positive");
  require(std::isfinite(elem_size_frac) && elem_size_frac > 0.0, "elem_size_frac: must be positive");
  require(d0_m >= 0.0, "d0_m: must be nonnegative");
  require(circle_radius_m > 0.0, "circle_radius_m: must be positive");
  require(std::isfinite(mu_1) && mu_1 > 0.0, "mu_1: must be positive");
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon: must be positive");
  require(bs_spacing_frac > 0.0, "bs_spacing_frac: must be positive");
  require(bs_angle_spread_deg >= 0.0, "bs_angle_spread_deg: must be nonnegative");
  require(bs_quad_points >= 1, "bs_quad_points: must be at least 1");
  require(max_iter >= 1, "max_iter: must be at least 1");
}

SystemConfig SystemConfig::paper() { return SystemConfig{}; }

SystemConfig SystemConfig::desk() {
  SystemConfig c;
  c.M_T = 32;
  c.M_R = 32;
  c.N_h = 6;
  c.N_v = 6;
  return c;
}

const std::vector<std::string>& required_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [k, spec] : key_table())
      if (spec.required) out.push_back(k);
    return out;
  }();
  return keys;
}

std::vector<std::string> known_config_keys() {
  std::vector<std::string> out;
  for (const auto& [k, spec] : key_table()) out.push_back(k);
  return out;
}

void apply_override(SystemConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = key_table();
  const auto it = table.find(trim(key));
  if (it == table.end()) throw Error(ErrorKind::Config, "unknown key '" + trim(key) + "'");
  it->second.set(cfg, it->first, value);
}

SystemConfig parse_config(const std::string& text) {
  SystemConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    apply_override(cfg, key, line.substr(eq + 1));
    seen.insert(key);
  }
  for (const auto& k : required_config_keys())
    if (!seen.count(k)) throw Error(ErrorKind::Config, "missing key '" + k + "'");
  cfg.validate();
  return cfg;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Io, "cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const SystemConfig& cfg) {
  std::string out;
  for (const auto& [k, spec] : key_table()) out += k + " = " + spec.get(cfg) + "\n";
  return out;
}

std::uint64_t config_hash(const SystemConfig& cfg) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : to_config_text(cfg)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::FdStars: return "FD_STARS";
    case Mode::HdStars: return "HD_STARS";
    case Mode::FdCris: return "FD_CRIS";
    case Mode::RandomPbm: return "RANDOM_PBM";
  }
  return "?";
}

std::string_view to_string(Region r) { return r == Region::Reflection ? "r" : "t"; }

Mode mode_from_string(std::string_view s) {
  if (s == "FD_STARS") return Mode::FdStars;
  if (s == "HD_STARS") return Mode::HdStars;
  if (s == "FD_CRIS") return Mode::FdCris;
  if (s == "RANDOM_PBM") return Mode::RandomPbm;
  throw Error(ErrorKind::InvalidArgument, "unknown mode '" + std::string(s) + "'");
}

}  // namespace stars
