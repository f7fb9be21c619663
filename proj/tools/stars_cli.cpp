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

// Command-line front end. Talks to the library only through the C API.
#include "stars/stars.h"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

struct Failure {
  int code;
};

void check(stars_status s) {
  if (s != STARS_OK) {
    std::cerr << "error: " << stars_last_error() << "\n";
    throw Failure{2};
  }
}

struct Owned {
  char* s = nullptr;
  ~Owned() { stars_string_free(s); }
};

using ConfigPtr = std::unique_ptr<stars_config, decltype(&stars_config_free)>;

stars_mode parse_mode(const std::string& name) {
  stars_mode m;
  check(stars_mode_parse(name.c_str(), &m));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral efficiency and passive beamforming for STARS-assisted full-duplex massive MIMO"};
  app.require_subcommand(1);

  std::string config_path, profile = "desk", out_dir;
  std::vector<std::string> overrides;
  long long seed = -1;
  int jobs = 1;
  app.add_option("--config", config_path, "Config file (key = value)")->check(CLI::ExistingFile);
  app.add_option("--profile", profile, "Built-in config when --config is absent")
      ->check(CLI::IsMember({"desk", "paper"}));
  app.add_option("--set", overrides, "Override a config key, key=value (repeatable)");
  app.add_option("--seed", seed, "Master seed")->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory");

  std::string mode_name = "FD_STARS";
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", mode_name, "FD_STARS | HD_STARS | FD_CRIS | RANDOM_PBM")
        ->check(CLI::IsMember({"FD_STARS", "HD_STARS", "FD_CRIS", "RANDOM_PBM"}));
  };

  auto* opt_cmd = app.add_subcommand("optimize", "Projected gradient ascent from several random starts");
  opt_cmd->fallthrough();
  int restarts = 5;
  add_mode(opt_cmd);
  opt_cmd->add_option("--restarts", restarts, "Number of random starts")->check(CLI::PositiveNumber);

  auto* val_cmd = app.add_subcommand("validate", "Check the closed forms against Monte Carlo");
  val_cmd->fallthrough();
  int n_real = 1000;
  double tolerance = 0.05;
  std::string pbm_path, corrupt;
  bool surrogate = false;
  add_mode(val_cmd);
  val_cmd->add_option("--n", n_real, "Channel realizations");
  val_cmd->add_option("--tolerance", tolerance, "Relative tolerance");
  val_cmd->add_option("--pbm", pbm_path, "PBM JSON to evaluate (default: random from the seed)");
  val_cmd->add_option("--corrupt", corrupt, "Double this closed-form term (negative control)");
  val_cmd->add_flag("--surrogate", surrogate, "Independent Gaussian cascaded channels");

  auto* grad_cmd = app.add_subcommand("gradcheck", "Analytic gradient versus central differences");
  grad_cmd->fallthrough();
  std::vector<std::uint64_t> seeds;
  bool corrupt_grad = false;
  add_mode(grad_cmd);
  grad_cmd->add_option("--seeds", seeds, "Seeds of the random test points (default 1..20)")->delimiter(',');
  grad_cmd->add_flag("--corrupt", corrupt_grad, "Corrupt the analytic gradient (negative control)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Optimize over a grid of one parameter");
  sweep_cmd->fallthrough();
  std::string variable;
  std::vector<double> values;
  std::vector<std::string> modes;
  int sweep_restarts = 1;
  sweep_cmd->add_option("--variable", variable, "N | p_b | p_u | M_R | M_T | p_train | K | elem_size_frac")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
  sweep_cmd->add_option("--modes", modes, "Comma-separated modes")->required()->delimiter(',');
  sweep_cmd->add_option("--restarts", sweep_restarts, "Random starts per point")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    stars_config* raw = nullptr;
    if (!config_path.empty())
      check(stars_config_load(config_path.c_str(), &raw));
    else
      check(stars_config_profile(profile.c_str(), &raw));
    ConfigPtr cfg(raw, stars_config_free);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
        return 2;
      }
      check(stars_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }
    if (seed >= 0) check(stars_config_set(cfg.get(), "seed", std::to_string(seed).c_str()));
    check(stars_config_validate(cfg.get()));
    const char* out = out_dir.empty() ? nullptr : out_dir.c_str();

    if (*opt_cmd) {
      Owned summary;
      check(stars_cmd_optimize(cfg.get(), parse_mode(mode_name), restarts, jobs, out, &summary.s));
      std::cout << summary.s << "\n";
      return 0;
    }
    if (*val_cmd) {
      stars_validate_options o;
      stars_validate_options_init(&o);
      o.n_realizations = n_real;
      o.tolerance = tolerance;
      o.jobs = jobs;
      o.mode = parse_mode(mode_name);
      o.channel_model = surrogate ? STARS_CHANNEL_GAUSSIAN_SURROGATE : STARS_CHANNEL_PHYSICAL;
      o.corrupt_term = corrupt.c_str();
      o.pbm_path = pbm_path.empty() ? nullptr : pbm_path.c_str();
      Owned report;
      int passed = 0;
      check(stars_cmd_validate(cfg.get(), &o, out, &report.s, &passed));
      std::cout << report.s << "\n";
      std::cerr << (passed ? "PASS" : "FAIL") << "\n";
      return passed ? 0 : 1;
    }
    if (*grad_cmd) {
      if (seeds.empty())
        for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
      Owned csv;
      int passed = 0;
      check(stars_cmd_gradcheck(cfg.get(), seeds.data(), seeds.size(), parse_mode(mode_name), corrupt_grad, out,
                                &csv.s, &passed));
      std::cout << csv.s;
      std::cerr << (passed ? "PASS" : "FAIL") << "\n";
      return passed ? 0 : 1;
    }
    if (*sweep_cmd) {
      std::vector<stars_mode> ms;
      for (const auto& m : modes) ms.push_back(parse_mode(m));
      Owned csv;
      check(stars_cmd_sweep(cfg.get(), variable.c_str(), values.data(), values.size(), ms.data(), ms.size(),
                            sweep_restarts, jobs, out, &csv.s));
      std::cout << csv.s;
      return 0;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
