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

#include "stars/gradients.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace stars {

enum class Termination { RelativeImprovement, MaxIter };

std::string_view to_string(Termination t);

struct IterationRecord {
  int iteration = 0;
  double objective = 0.0;
  double step = 0.0;       // step used to reach this iterate
  double grad_norm = 0.0;  // at this iterate
};

struct OptTrace {
  std::vector<IterationRecord> iterates;  // entry 0 is the initial point
  std::vector<double> wall_time_s;        // per iterate, not part of the CSV
  Termination terminated_by = Termination::MaxIter;
  double best_objective = 0.0;
  int best_iteration = 0;

  /// "iteration,objective,step,gradnorm" followed by one row per iterate.
  std::string to_csv() const;
};

struct OptOptions {
  int max_iter = 500;
  double mu_1 = 500.0;
  double epsilon = 1e-5;
  StepRule step_rule = StepRule::Bb2;
  Mode mode = Mode::FdStars;
  std::optional<std::filesystem::path> checkpoint;  // rewritten every `checkpoint_every` iterations
  int checkpoint_every = 50;

  static OptOptions from(const SystemConfig& cfg, Mode mode = Mode::FdStars);
};

struct OptResult {
  PBM best;
  OptTrace trace;
};

/// Projected gradient ascent with Barzilai-Borwein steps. Stops when the
/// relative change of the objective falls below epsilon or after max_iter
/// iterations, and returns the best iterate seen.
OptResult prog_ram(const Scenario& scn, const PBM& init, const OptOptions& opt);

/// Step size from two consecutive iterates. Falls back to `mu_prev` when the
/// denominator is below 1e-18 and clamps to [1e-6 mu_1, 1e3 mu_1].
double bb_step(const PBM& theta_prev, const PBM& theta_cur, const Gradient& grad_prev, const Gradient& grad_cur,
               double mu_prev, double mu_1, StepRule rule = StepRule::Bb2);

/// Feasibility projection matching the mode (coupled split or unit modulus).
PBM project_for(Mode mode, const cvec& theta_hat_r, const cvec& theta_hat_t);

/// Random starting point matching the mode.
PBM random_init(Mode mode, int N, std::uint64_t seed);

}  // namespace stars
