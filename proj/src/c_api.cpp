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

#include "stars/stars.h"

#include "stars/experiments.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>

struct stars_config {
  stars::SystemConfig cfg;
};

struct stars_scenario {
  stars::Scenario scn;
};

struct stars_pbm {
  stars::PBM pbm;
};

namespace {

thread_local std::string last_error;

stars_status status_of(stars::ErrorKind k) {
  switch (k) {
    case stars::ErrorKind::InvalidArgument: return STARS_E_INVALID_ARGUMENT;
    case stars::ErrorKind::Parse: return STARS_E_PARSE;
    case stars::ErrorKind::Config: return STARS_E_CONFIG;
    case stars::ErrorKind::Io: return STARS_E_IO;
    case stars::ErrorKind::Numeric: return STARS_E_NUMERIC;
    case stars::ErrorKind::Internal: return STARS_E_INTERNAL;
  }
  return STARS_E_INTERNAL;
}

template <class F>
stars_status guard(F&& f) {
  try {
    last_error.clear();
    f();
    return STARS_OK;
  } catch (const stars::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return STARS_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return STARS_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw stars::Error(stars::ErrorKind::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

stars::Mode mode_of(stars_mode m) {
  switch (m) {
    case STARS_MODE_FD_STARS: return stars::Mode::FdStars;
    case STARS_MODE_HD_STARS: return stars::Mode::HdStars;
    case STARS_MODE_FD_CRIS: return stars::Mode::FdCris;
    case STARS_MODE_RANDOM_PBM: return stars::Mode::RandomPbm;
  }
  throw stars::Error(stars::ErrorKind::InvalidArgument, "unknown mode");
}

std::optional<std::filesystem::path> dir_of(const char* p) {
  if (!p || !*p) return std::nullopt;
  return std::filesystem::path(p);
}

}  // namespace

extern "C" {

const char* stars_version(void) { return "1.0.0"; }

const char* stars_last_error(void) { return last_error.c_str(); }

void stars_string_free(char* s) { std::free(s); }

stars_status stars_mode_parse(const char* name, stars_mode* out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    *out = static_cast<stars_mode>(stars::mode_from_string(name));
  });
}

stars_status stars_config_profile(const char* profile, stars_config** out) {
  return guard([&] {
    require(profile, "profile");
    require(out, "out");
    const std::string p = profile;
    if (p == "desk")
      *out = new stars_config{stars::SystemConfig::desk()};
    else if (p == "paper")
      *out = new stars_config{stars::SystemConfig::paper()};
    else
      throw stars::Error(stars::ErrorKind::InvalidArgument, "unknown profile '" + p + "'");
  });
}

stars_status stars_config_load(const char* path, stars_config** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new stars_config{stars::load_config(path)};
  });
}

stars_status stars_config_set(stars_config* cfg, const char* key, const char* value) {
  return guard([&] {
    require(cfg, "cfg");
    require(key, "key");
    require(value, "value");
    stars::apply_override(cfg->cfg, key, value);
  });
}

stars_status stars_config_validate(const stars_config* cfg) {
  return guard([&] {
    require(cfg, "cfg");
    cfg->cfg.validate();
  });
}

stars_status stars_config_to_text(const stars_config* cfg, char** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = dup(stars::to_config_text(cfg->cfg));
  });
}

stars_status stars_config_hash(const stars_config* cfg, uint64_t* out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = stars::config_hash(cfg->cfg);
  });
}

void stars_config_free(stars_config* cfg) { delete cfg; }

stars_status stars_scenario_create(const stars_config* cfg, stars_scenario** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = new stars_scenario{stars::Scenario::build(cfg->cfg)};
  });
}

void stars_scenario_free(stars_scenario* scn) { delete scn; }

stars_status stars_pbm_random(int n_elements, stars_mode mode, uint64_t seed, stars_pbm** out) {
  return guard([&] {
    require(out, "out");
    if (n_elements < 1) throw stars::Error(stars::ErrorKind::InvalidArgument, "element count must be positive");
    *out = new stars_pbm{stars::random_init(mode_of(mode), n_elements, seed)};
  });
}

stars_status stars_pbm_from_json(const char* json, stars_pbm** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new stars_pbm{stars::pbm_from_json(json)};
  });
}

stars_status stars_pbm_to_json(const stars_pbm* pbm, char** out) {
  return guard([&] {
    require(pbm, "pbm");
    require(out, "out");
    *out = dup(stars::pbm_to_json(pbm->pbm));
  });
}

stars_status stars_pbm_size(const stars_pbm* pbm, int* out) {
  return guard([&] {
    require(pbm, "pbm");
    require(out, "out");
    *out = pbm->pbm.size();
  });
}

void stars_pbm_free(stars_pbm* pbm) { delete pbm; }

stars_status stars_evaluate(const stars_scenario* scn, const stars_pbm* pbm, stars_mode mode, double* sum_se,
                            double* se_ul, double* se_dl) {
  return guard([&] {
    require(scn, "scn");
    require(pbm, "pbm");
    const stars::SEReport r = stars::sum_se(scn->scn, pbm->pbm, mode_of(mode));
    if (sum_se) *sum_se = r.sum_se;
    if (se_ul) *se_ul = r.se_ul;
    if (se_dl) *se_dl = r.se_dl;
  });
}

stars_status stars_report_json(const stars_scenario* scn, const stars_pbm* pbm, stars_mode mode, char** out) {
  return guard([&] {
    require(scn, "scn");
    require(pbm, "pbm");
    require(out, "out");
    *out = dup(stars::sum_se(scn->scn, pbm->pbm, mode_of(mode)).to_json());
  });
}

stars_status stars_optimize(const stars_scenario* scn, const stars_pbm* init, stars_mode mode, stars_pbm** best,
                            double* best_objective, char** trace_csv) {
  return guard([&] {
    require(scn, "scn");
    require(init, "init");
    require(best, "best");
    const stars::OptResult r =
        stars::prog_ram(scn->scn, init->pbm, stars::OptOptions::from(scn->scn.cfg, mode_of(mode)));
    char* csv = trace_csv ? dup(r.trace.to_csv()) : nullptr;
    *best = new stars_pbm{r.best};
    if (best_objective) *best_objective = r.trace.best_objective;
    if (trace_csv) *trace_csv = csv;
  });
}

stars_status stars_cmd_optimize(const stars_config* cfg, stars_mode mode, int restarts, int jobs, const char* out_dir,
                                char** summary_json) {
  return guard([&] {
    require(cfg, "cfg");
    const auto s = stars::cmd_optimize(cfg->cfg, mode_of(mode), restarts, jobs, dir_of(out_dir));
    if (summary_json) *summary_json = dup(s.to_json());
  });
}

void stars_validate_options_init(stars_validate_options* opt) {
  if (!opt) return;
  opt->n_realizations = 1000;
  opt->tolerance = 0.05;
  opt->jobs = 1;
  opt->mode = STARS_MODE_FD_STARS;
  opt->channel_model = STARS_CHANNEL_PHYSICAL;
  opt->corrupt_term = nullptr;
  opt->pbm_path = nullptr;
}

stars_status stars_cmd_validate(const stars_config* cfg, const stars_validate_options* opt, const char* out_dir,
                                char** report_json, int* passed) {
  return guard([&] {
    require(cfg, "cfg");
    require(opt, "opt");
    stars::ValidateOptions o;
    o.n_realizations = opt->n_realizations;
    o.tolerance = opt->tolerance;
    o.jobs = opt->jobs;
    o.mode = mode_of(opt->mode);
    o.model = opt->channel_model == STARS_CHANNEL_GAUSSIAN_SURROGATE ? stars::ChannelModel::GaussianSurrogate
                                                                     : stars::ChannelModel::Physical;
    if (opt->corrupt_term) o.corrupt_term = opt->corrupt_term;
    if (opt->pbm_path && *opt->pbm_path) o.pbm = opt->pbm_path;
    const auto rep = stars::cmd_validate(cfg->cfg, o, dir_of(out_dir));
    if (report_json) *report_json = dup(rep.to_json());
    if (passed) *passed = rep.pass ? 1 : 0;
  });
}

stars_status stars_cmd_gradcheck(const stars_config* cfg, const uint64_t* seeds, size_t n_seeds, stars_mode mode,
                                 int corrupt, const char* out_dir, char** csv, int* passed) {
  return guard([&] {
    require(cfg, "cfg");
    if (n_seeds > 0) require(seeds, "seeds");
    const std::vector<std::uint64_t> s(seeds, seeds + n_seeds);
    const auto rep = stars::cmd_gradcheck(cfg->cfg, s, mode_of(mode), corrupt != 0, 1e-4, dir_of(out_dir));
    if (csv) *csv = dup(rep.to_csv());
    if (passed) *passed = rep.pass ? 1 : 0;
  });
}

stars_status stars_cmd_sweep(const stars_config* cfg, const char* variable, const double* values, size_t n_values,
                             const stars_mode* modes, size_t n_modes, int restarts, int jobs, const char* out_dir,
                             char** csv) {
  return guard([&] {
    require(cfg, "cfg");
    require(variable, "variable");
    if (n_values > 0) require(values, "values");
    if (n_modes > 0) require(modes, "modes");
    stars::SweepSpec spec;
    spec.variable = variable;
    spec.values.assign(values, values + n_values);
    for (size_t i = 0; i < n_modes; ++i) spec.modes.push_back(mode_of(modes[i]));
    spec.restarts = restarts;
    const auto res = stars::cmd_sweep(cfg->cfg, spec, jobs, dir_of(out_dir));
    if (csv) *csv = dup(res.to_csv());
  });
}

}  // extern "C"
