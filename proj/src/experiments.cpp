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

#include "stars/experiments.hpp"

#include "json.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

namespace stars {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create '" + dir.string() + "': " + ec.message());
}

}  // namespace

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  jobs = std::clamp(jobs, 1, n);
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first;
  std::mutex m;
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(m);
            if (!first) first = std::current_exception();
          }
        }
      });
  }
  if (first) std::rethrow_exception(first);
}

double OptimizeSummary::relative_spread() const {
  if (restarts.empty()) return 0.0;
  double lo = restarts.front().objective, hi = lo;
  for (const auto& r : restarts) {
    lo = std::min(lo, r.objective);
    hi = std::max(hi, r.objective);
  }
  return hi > 0.0 ? (hi - lo) / hi : 0.0;
}

std::string OptimizeSummary::to_json() const {
  nlohmann::ordered_json j;
  j["mode"] = to_string(mode);
  auto& rs = j["restarts"] = nlohmann::ordered_json::array();
  for (const auto& r : restarts)
    rs.push_back({{"seed", r.seed},
                  {"objective", r.objective},
                  {"iterations", r.iterations},
                  {"terminated_by", to_string(r.terminated_by)}});
  j["best_restart"] = best_restart;
  j["relative_spread"] = relative_spread();
  j["best"] = nlohmann::ordered_json::parse(best_report.to_json());
  return j.dump(2);
}

OptimizeSummary cmd_optimize(const SystemConfig& cfg, Mode mode, int restarts, int jobs,
                             const std::optional<std::filesystem::path>& out) {
  if (restarts < 1) throw Error(ErrorKind::InvalidArgument, "restarts must be at least 1");
  const Scenario scn = Scenario::build(cfg);
  const OptOptions opt = OptOptions::from(cfg, mode);
  std::vector<OptResult> runs(static_cast<std::size_t>(restarts));
  parallel_for(restarts, jobs, [&](int r) {
    const PBM init = random_init(mode, cfg.N(), cfg.seed + static_cast<std::uint64_t>(r));
    if (mode == Mode::RandomPbm) {
      OptResult res{init, {}};
      const double f = objective(scn, init, mode);
      res.trace.iterates.push_back({0, f, 0.0, 0.0});
      res.trace.best_objective = f;
      runs[r] = std::move(res);
    } else {
      runs[r] = prog_ram(scn, init, opt);
    }
  });

  OptimizeSummary s;
  s.mode = mode;
  for (int r = 0; r < restarts; ++r) {
    const auto& t = runs[r].trace;
    s.restarts.push_back({cfg.seed + static_cast<std::uint64_t>(r), t.best_objective,
                          static_cast<int>(t.iterates.size()) - 1, t.terminated_by});
    if (t.best_objective > runs[s.best_restart].trace.best_objective) s.best_restart = r;
    s.traces.push_back(t);
  }
  s.best = runs[s.best_restart].best;
  s.best_report = sum_se(scn, s.best, mode);

  if (out) {
    ensure_dir(*out);
    for (int r = 0; r < restarts; ++r) write_text(*out / ("trace_" + std::to_string(r) + ".csv"), s.traces[r].to_csv());
    write_text(*out / "best_pbm.json", pbm_to_json(s.best) + "\n");
    write_text(*out / "optimize.json", s.to_json() + "\n");
  }
  return s;
}

ValidationReport cmd_validate(const SystemConfig& cfg, const ValidateOptions& opt,
                              const std::optional<std::filesystem::path>& out) {
  if (opt.n_realizations < 100) throw Error(ErrorKind::InvalidArgument, "at least 100 realizations are required");
  const Scenario scn = Scenario::build(cfg);
  PBM pbm;
  if (opt.pbm) {
    std::ifstream is(*opt.pbm);
    if (!is) throw Error(ErrorKind::Io, "cannot read '" + opt.pbm->string() + "'");
    const std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    pbm = pbm_from_json(text);
  } else {
    pbm = random_init(opt.mode, cfg.N(), cfg.seed);
  }
  ValidationReport rep = validate_closed_form(scn, pbm, opt.n_realizations, opt.tolerance, cfg.seed, opt.mode,
                                              opt.jobs, opt.corrupt_term, opt.model);
  if (out) {
    ensure_dir(*out);
    write_text(*out / "validate.json", rep.to_json() + "\n");
  }
  return rep;
}

std::string GradcheckReport::to_csv() const {
  std::string s = "seed,mode,part,index,analytic_re,analytic_im,numeric_re,numeric_im,rel_err\n";
  for (const auto& r : rows) {
    s += std::to_string(r.seed) + "," + std::string(to_string(mode)) + "," + r.part + "," + std::to_string(r.index) +
         "," + fmt(r.analytic.real()) + "," + fmt(r.analytic.imag()) + "," + fmt(r.numeric.real()) + "," +
         fmt(r.numeric.imag()) + "," + fmt(r.rel_err) + "\n";
  }
  return s;
}

GradcheckReport cmd_gradcheck(const SystemConfig& cfg, const std::vector<std::uint64_t>& seeds, Mode mode,
                              bool corrupt, double threshold, const std::optional<std::filesystem::path>& out) {
  if (seeds.empty()) throw Error(ErrorKind::InvalidArgument, "gradcheck needs at least one seed");
  const Scenario scn = Scenario::build(cfg);
  GradcheckReport rep;
  rep.mode = mode;
  rep.threshold = threshold;
  for (std::uint64_t seed : seeds) {
    const PBM pbm = random_init(mode, cfg.N(), seed);
    Gradient a = grad_objective(scn, pbm, mode);
    if (corrupt) a.g_r *= 2.0;
    const Gradient n = numeric_gradient(scn, pbm, mode);
    const double scale = std::max(n.g_r.cwiseAbs().maxCoeff(), n.g_t.cwiseAbs().maxCoeff());
    auto push = [&](char part, const cvec& av, const cvec& nv) {
      for (Eigen::Index i = 0; i < av.size(); ++i) {
        const double diff = std::abs(av(i) - nv(i));
        const double rel = scale > 0.0 ? diff / scale : (diff > 0.0 ? INFINITY : 0.0);
        rep.rows.push_back({seed, part, static_cast<int>(i), av(i), nv(i), rel});
        rep.max_rel_err = std::max(rep.max_rel_err, rel);
      }
    };
    push('r', a.g_r, n.g_r);
    push('t', a.g_t, n.g_t);
  }
  rep.pass = rep.max_rel_err <= threshold;
  if (out) {
    ensure_dir(*out);
    write_text(*out / "gradcheck.csv", rep.to_csv());
  }
  return rep;
}

void SweepSpec::validate() const {
  static const std::vector<std::string> known{"N", "p_b", "p_u", "M_R", "M_T", "p_train", "K", "elem_size_frac"};
  if (std::find(known.begin(), known.end(), variable) == known.end())
    throw Error(ErrorKind::InvalidArgument, "unknown sweep variable '" + variable + "'");
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one value");
  if (modes.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one mode");
  if (restarts < 1) throw Error(ErrorKind::InvalidArgument, "restarts must be at least 1");
}

SystemConfig apply_sweep_value(SystemConfig cfg, const std::string& variable, double value) {
  auto as_int = [&](double v) {
    if (v != std::floor(v) || v < 1 || v > 1e6)
      throw Error(ErrorKind::InvalidArgument, "sweep value for " + variable + " must be a positive integer");
    return static_cast<int>(v);
  };
  if (variable == "N") {
    const int n = as_int(value);
    const int side = static_cast<int>(std::lround(std::sqrt(n)));
    if (side * side != n) throw Error(ErrorKind::InvalidArgument, "N must be a perfect square");
    cfg.N_h = cfg.N_v = side;
  } else if (variable == "K") {
    const int k = as_int(value);
    if (k % 2) throw Error(ErrorKind::InvalidArgument, "K must be even");
    cfg.K_r = cfg.K_t = k / 2;
  } else if (variable == "M_R") {
    cfg.M_R = as_int(value);
  } else if (variable == "M_T") {
    cfg.M_T = as_int(value);
  } else if (variable == "p_b") {
    cfg.p_b_dBm = value;
  } else if (variable == "p_u") {
    cfg.p_u_dBm = value;
  } else if (variable == "p_train") {
    cfg.p_train_dBm = value;
  } else if (variable == "elem_size_frac") {
    cfg.elem_size_frac = value;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown sweep variable '" + variable + "'");
  }
  cfg.validate();
  return cfg;
}

std::string SweepResult::to_csv() const {
  std::string s = "variable,value,mode,se_ul,se_dl,sum_se\n";
  for (const auto& r : rows)
    s += r.variable + "," + fmt(r.value) + "," + std::string(to_string(r.mode)) + "," + fmt(r.se_ul) + "," +
         fmt(r.se_dl) + "," + fmt(r.sum_se) + "\n";
  return s;
}

SweepResult cmd_sweep(const SystemConfig& cfg, const SweepSpec& spec, int jobs,
                      const std::optional<std::filesystem::path>& out) {
  spec.validate();
  const int nm = static_cast<int>(spec.modes.size());
  const int total = static_cast<int>(spec.values.size()) * nm;
  SweepResult res;
  res.rows.resize(static_cast<std::size_t>(total));
  parallel_for(total, jobs, [&](int i) {
    const double value = spec.values[i / nm];
    const Mode mode = spec.modes[i % nm];
    const SystemConfig c = apply_sweep_value(cfg, spec.variable, value);
    SweepRow row{spec.variable, value, mode};
    if (mode == Mode::RandomPbm) {
      const Scenario scn = Scenario::build(c);
      for (int r = 0; r < spec.restarts; ++r) {
        const SEReport rep = sum_se(scn, random_pbm(c.N(), c.seed + static_cast<std::uint64_t>(r)), mode);
        row.se_ul += rep.se_ul / spec.restarts;
        row.se_dl += rep.se_dl / spec.restarts;
        row.sum_se += rep.sum_se / spec.restarts;
      }
    } else {
      const OptimizeSummary s = cmd_optimize(c, mode, spec.restarts, 1);
      row.se_ul = s.best_report.se_ul;
      row.se_dl = s.best_report.se_dl;
      row.sum_se = s.best_report.sum_se;
    }
    res.rows[i] = row;
  });
  if (out) {
    ensure_dir(*out);
    write_text(*out / "sweep.csv", res.to_csv());
  }
  return res;
}

}  // namespace stars
