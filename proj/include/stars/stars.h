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

/* C interface of the stars library. Every function returns a stars_status;
 * on failure stars_last_error() describes the problem for the calling
 * thread. Strings returned through char** are owned by the caller and must be
 * released with stars_string_free. */
#ifndef STARS_STARS_H
#define STARS_STARS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define STARS_API __declspec(dllexport)
#else
#define STARS_API __attribute__((visibility("default")))
#endif

typedef enum stars_status {
  STARS_OK = 0,
  STARS_E_INVALID_ARGUMENT = 1,
  STARS_E_PARSE = 2,
  STARS_E_CONFIG = 3,
  STARS_E_IO = 4,
  STARS_E_NUMERIC = 5,
  STARS_E_INTERNAL = 6
} stars_status;

typedef enum stars_mode {
  STARS_MODE_FD_STARS = 0,
  STARS_MODE_HD_STARS = 1,
  STARS_MODE_FD_CRIS = 2,
  STARS_MODE_RANDOM_PBM = 3
} stars_mode;

typedef enum stars_channel_model { STARS_CHANNEL_PHYSICAL = 0, STARS_CHANNEL_GAUSSIAN_SURROGATE = 1 } stars_channel_model;

typedef struct stars_config stars_config;
typedef struct stars_scenario stars_scenario;
typedef struct stars_pbm stars_pbm;

STARS_API const char* stars_version(void);
STARS_API const char* stars_last_error(void);
STARS_API void stars_string_free(char* s);

STARS_API stars_status stars_mode_parse(const char* name, stars_mode* out);

/* Configuration. `profile` is "desk" or "paper". */
STARS_API stars_status stars_config_profile(const char* profile, stars_config** out);
STARS_API stars_status stars_config_load(const char* path, stars_config** out);
STARS_API stars_status stars_config_set(stars_config* cfg, const char* key, const char* value);
STARS_API stars_status stars_config_validate(const stars_config* cfg);
STARS_API stars_status stars_config_to_text(const stars_config* cfg, char** out);
STARS_API stars_status stars_config_hash(const stars_config* cfg, uint64_t* out);
STARS_API void stars_config_free(stars_config* cfg);

/* Scenario: geometry and correlation matrices built from a validated config. */
STARS_API stars_status stars_scenario_create(const stars_config* cfg, stars_scenario** out);
STARS_API void stars_scenario_free(stars_scenario* scn);

/* Passive beamforming coefficients. */
STARS_API stars_status stars_pbm_random(int n_elements, stars_mode mode, uint64_t seed, stars_pbm** out);
STARS_API stars_status stars_pbm_from_json(const char* json, stars_pbm** out);
STARS_API stars_status stars_pbm_to_json(const stars_pbm* pbm, char** out);
STARS_API stars_status stars_pbm_size(const stars_pbm* pbm, int* out);
STARS_API void stars_pbm_free(stars_pbm* pbm);

/* Closed-form evaluation. Output pointers may be NULL. */
STARS_API stars_status stars_evaluate(const stars_scenario* scn, const stars_pbm* pbm, stars_mode mode, double* sum_se,
                                      double* se_ul, double* se_dl);
STARS_API stars_status stars_report_json(const stars_scenario* scn, const stars_pbm* pbm, stars_mode mode, char** out);

/* Projected gradient ascent from `init`; the trace CSV is optional. */
STARS_API stars_status stars_optimize(const stars_scenario* scn, const stars_pbm* init, stars_mode mode,
                                      stars_pbm** best, double* best_objective, char** trace_csv);

/* Experiment commands. `out_dir` may be NULL to skip writing files. */
STARS_API stars_status stars_cmd_optimize(const stars_config* cfg, stars_mode mode, int restarts, int jobs,
                                          const char* out_dir, char** summary_json);

typedef struct stars_validate_options {
  int n_realizations;
  double tolerance;
  int jobs;
  stars_mode mode;
  stars_channel_model channel_model;
  const char* corrupt_term; /* NULL or "" for none */
  const char* pbm_path;     /* NULL: random PBM from the config seed */
} stars_validate_options;

STARS_API void stars_validate_options_init(stars_validate_options* opt);
STARS_API stars_status stars_cmd_validate(const stars_config* cfg, const stars_validate_options* opt,
                                          const char* out_dir, char** report_json, int* passed);

STARS_API stars_status stars_cmd_gradcheck(const stars_config* cfg, const uint64_t* seeds, size_t n_seeds,
                                           stars_mode mode, int corrupt, const char* out_dir, char** csv,
                                           int* passed);

STARS_API stars_status stars_cmd_sweep(const stars_config* cfg, const char* variable, const double* values,
                                       size_t n_values, const stars_mode* modes, size_t n_modes, int restarts,
                                       int jobs, const char* out_dir, char** csv);

#ifdef __cplusplus
}
#endif

#endif
