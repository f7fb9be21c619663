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

#include "stars/optimizer.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

namespace stars {

std::string_view to_string(Termination t) {
  return t == Termination::RelativeImprovement ? "relative_improvement" : "max_iter";
}

std::string OptTrace::to_csv() const {
  std::string out = "iteration,objective,step,gradnorm\n";
  char buf[128];
  for (const auto& r : iterates) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", r.iteration, r.objective, r.step, r.grad_norm);
    out += buf;
  }
  return out;
}

OptOptions OptOptions::from(const SystemConfig& cfg, Mode mode) {
  OptOptions o;
  o.max_iter = cfg.max_iter;
  o.mu_1 = cfg.mu_1;
  o.epsilon = cfg.epsilon;
  o.step_rule = cfg.step_rule;
  o.mode = mode;
  return o;
}

PBM project_for(Mode mode, const cvec& theta_hat_r, const cvec& theta_hat_t) {
  return mode == Mode::FdCris ? project_cris(theta_hat_r, theta_hat_t) : project(theta_hat_r, theta_hat_t);
}

PBM random_init(Mode mode, int N, std::uint64_t seed) {
  return mode == Mode::FdCris ? random_cris(N, seed) : random_pbm(N, seed);
}

double bb_step(const PBM& theta_prev, const PBM& theta_cur, const Gradient& grad_prev, const Gradient& grad_cur,
               double mu_prev, double mu_1, StepRule rule) {
  if (rule == StepRule::Fixed) return mu_prev;
  const cvec s_r = theta_cur.theta_r - theta_prev.theta_r;
  const cvec s_t = theta_cur.theta_t - theta_prev.theta_t;
  const cvec y_r = grad_cur.g_r - grad_prev.g_r;
  const cvec y_t = grad_cur.g_t - grad_prev.g_t;
  const double sy = std::abs((s_r.dot(y_r) + s_t.dot(y_t)).real());
  double num, den;
  if (rule == StepRule::Bb2) {
    num = sy;
    den = y_r.squaredNorm() + y_t.squaredNorm();
  } else {
    num = s_r.squaredNorm() + s_t.squaredNorm();
    den = sy;
  }
  if (den < 1e-18) return mu_prev;
  return std::clamp(num / den, 1e-6 * mu_1, 1e3 * mu_1);
}

namespace {

struct Point {
  PBM pbm;
  double f = 0.0;
  Gradient g;
};

Point evaluate(const Scenario& scn, PBM pbm, Mode mode) {
  const StatisticalState st = build_state(scn, pbm);
  const SEReport rep = sum_se(scn, st, mode);
  if (!std::isfinite(rep.sum_se)) throw Error(ErrorKind::Numeric, "objective is not finite");
  const GradientWorkspace ws = GradientWorkspace::build(scn, st, pbm, mode);
  Gradient g = grad_objective(scn, st, ws, rep);
  return {std::move(pbm), rep.sum_se, std::move(g)};
}

void write_checkpoint(const std::filesystem::path& path, int iteration, const Point& p) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot write checkpoint '" + path.string() + "'");
  char head[96];
  std::snprintf(head, sizeof head, "{\"iteration\": %d, \"objective\": %.17g, \"pbm\": ", iteration, p.f);
  os << head << pbm_to_json(p.pbm) << "}\n";
}

}  // namespace

OptResult prog_ram(const Scenario& scn, const PBM& init, const OptOptions& opt) {
  if (init.size() != scn.cfg.N()) throw Error(ErrorKind::InvalidArgument, "initial PBM has the wrong length");
  if (opt.max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be positive");
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

  Point cur = evaluate(scn, init, opt.mode);
  OptResult res{cur.pbm, {}};
  res.trace.iterates.push_back({0, cur.f, 0.0, std::sqrt(cur.g.squared_norm())});
  res.trace.wall_time_s.push_back(elapsed());
  res.trace.best_objective = cur.f;

  double mu = opt.mu_1;
  for (int it = 1; it <= opt.max_iter; ++it) {
    Point next = evaluate(scn, project_for(opt.mode, cur.pbm.theta_r + mu * cur.g.g_r, cur.pbm.theta_t + mu * cur.g.g_t),
                          opt.mode);
    res.trace.iterates.push_back({it, next.f, mu, std::sqrt(next.g.squared_norm())});
    res.trace.wall_time_s.push_back(elapsed());
    if (next.f > res.trace.best_objective) {
      res.trace.best_objective = next.f;
      res.trace.best_iteration = it;
      res.best = next.pbm;
    }
    if (opt.checkpoint && it % opt.checkpoint_every == 0) write_checkpoint(*opt.checkpoint, it, next);

    const double delta = next.f - cur.f;
    const bool converged = cur.f != 0.0 ? std::abs(delta) / std::abs(cur.f) < opt.epsilon : delta == 0.0;
    mu = bb_step(cur.pbm, next.pbm, cur.g, next.g, mu, opt.mu_1, opt.step_rule);
    cur = std::move(next);
    if (converged) {
      res.trace.terminated_by = Termination::RelativeImprovement;
      break;
    }
  }
  return res;
}

}  // namespace stars
