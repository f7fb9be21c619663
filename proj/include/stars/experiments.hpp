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

#include "stars/monte_carlo.hpp"
#include "stars/optimizer.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stars {

/// Runs fn(0) .. fn(n-1) on up to `jobs` threads. Each index runs exactly once;
/// callers write results by index so the output does not depend on `jobs`.
/// The first exception thrown by any task is rethrown after all threads join.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

struct RestartResult {
  std::uint64_t seed = 0;
  double objective = 0.0;  // best objective of the run
  int iterations = 0;
  Termination terminated_by = Termination::MaxIter;
};

struct OptimizeSummary {
  Mode mode = Mode::FdStars;
  std::vector<RestartResult> restarts;
  int best_restart = 0;
  PBM best;
  SEReport best_report;
  std::vector<OptTrace> traces;

  /// (max - min) / max over the restart objectives.
  double relative_spread() const;
  std::string to_json() const;
};

/// Optimizes from `restarts` random starts seeded cfg.seed, cfg.seed + 1, ...
/// RANDOM_PBM evaluates the starting points without optimizing. When `out` is
/// set, writes trace_<r>.csv, best_pbm.json and optimize.json there.
OptimizeSummary cmd_optimize(const SystemConfig& cfg, Mode mode, int restarts, int jobs,
                             const std::optional<std::filesystem::path>& out = std::nullopt);

struct ValidateOptions {
  int n_realizations = 1000;
  double tolerance = 0.05;
  int jobs = 1;
  Mode mode = Mode::FdStars;
  ChannelModel model = ChannelModel::Physical;
  std::string corrupt_term;                   // negative control
  std::optional<std::filesystem::path> pbm;  // default: random PBM drawn from cfg.seed
};

/// Monte-Carlo validation; writes validate.json to `out` when set.
ValidationReport cmd_validate(const SystemConfig& cfg, const ValidateOptions& opt,
                              const std::optional<std::filesystem::path>& out = std::nullopt);

struct GradcheckRow {
  std::uint64_t seed = 0;
  char part = 'r';  // 'r' or 't'
  int index = 0;
  cplx analytic, numeric;
  double rel_err = 0.0;  // |analytic - numeric| / max-norm of the numeric gradient
};

struct GradcheckReport {
  Mode mode = Mode::FdStars;
  std::vector<GradcheckRow> rows;
  double max_rel_err = 0.0;
  double threshold = 1e-4;
  bool pass = true;
  std::string to_csv() const;
};

/// Compares the analytic gradient with central differences (step 1e-6) at
/// random feasible points drawn from each seed. `corrupt` doubles the analytic
/// reflection gradient as a negative control.
GradcheckReport cmd_gradcheck(const SystemConfig& cfg, const std::vector<std::uint64_t>& seeds, Mode mode,
                              bool corrupt = false, double threshold = 1e-4,
                              const std::optional<std::filesystem::path>& out = std::nullopt);

struct SweepSpec {
  std::string variable;  // N, p_b, p_u, M_R, M_T, p_train, K or elem_size_frac
  std::vector<double> values;
  std::vector<Mode> modes;
  int restarts = 1;

  void validate() const;
};

struct SweepRow {
  std::string variable;
  double value = 0.0;
  Mode mode = Mode::FdStars;
  double se_ul = 0.0, se_dl = 0.0, sum_se = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::string to_csv() const;
};

/// Applies one sweep value to a config. N must be a perfect square (N_h = N_v)
/// and K even (K_r = K_t); powers are in dBm.
SystemConfig apply_sweep_value(SystemConfig cfg, const std::string& variable, double value);

/// One optimized point per (value, mode); RANDOM_PBM averages `restarts`
/// random PBMs instead. Writes sweep.csv to `out` when set.
SweepResult cmd_sweep(const SystemConfig& cfg, const SweepSpec& spec, int jobs,
                      const std::optional<std::filesystem::path>& out = std::nullopt);

}  // namespace stars
