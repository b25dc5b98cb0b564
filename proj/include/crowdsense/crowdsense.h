/*
 * Copyright 2026 The crowdsense Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the crowdsense library: trace loading and synthesis,
 * budget-constrained sensing simulation, parameter sweeps and the hindsight
 * oracle comparison.
 *
 * Objects are opaque handles released with the matching *_destroy call.
 * Every fallible call returns a cs_status; on failure a thread-local message
 * is available from cs_last_error(). Output parameters are left untouched
 * when a call fails.
 */

#ifndef CROWDSENSE_CROWDSENSE_H_
#define CROWDSENSE_CROWDSENSE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CS_API __declspec(dllexport)
#else
#define CS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values below 5 double as CLI exit codes. */
typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_INVALID_ARGUMENT = 1,
  CS_ERR_INVALID_CONFIG = 2,
  CS_ERR_PARSE = 3,
  CS_ERR_ORACLE_GUARD = 4,
  CS_ERR_SCHEMA = 5,
  CS_ERR_IO = 6,
  CS_ERR_INTERNAL = 7
} cs_status;

typedef enum cs_algorithm {
  CS_ALGORITHM_RANDOM = 0,
  CS_ALGORITHM_GREEDY = 1,
  CS_ALGORITHM_HCONTEXT = 2
} cs_algorithm;

typedef enum cs_bootstrap {
  CS_BOOTSTRAP_RANDOM = 0,
  CS_BOOTSTRAP_FRIENDSHIP = 1,
  CS_BOOTSTRAP_INTEREST = 2
} cs_bootstrap;

typedef struct cs_dataset_s* cs_dataset;
typedef struct cs_report_s* cs_report;
typedef struct cs_oracle_report_s* cs_oracle_report;
typedef struct cs_sweep_s* cs_sweep;

typedef struct cs_synth_params {
  int64_t n_internal;
  int64_t n_external;
  int64_t n_groups;
  int64_t steps;
  int64_t tau_s;
  double p_detect;
  double p_move;
  int64_t n_locations;
  double friendship_within_group;
  int64_t interests_per_device;
} cs_synth_params;

/* Exactly one of n_count (> 0) or n_fraction (> 0) is set; the other is 0. */
typedef struct cs_sim_config {
  int64_t ts_seconds;
  int64_t td_seconds;
  int64_t n_count;
  double n_fraction;
  double k_fraction;
  int64_t rounds;
  cs_algorithm algorithm;
  cs_bootstrap bootstrap;
  uint64_t seed;
  int64_t start_time_s;
} cs_sim_config;

typedef struct cs_dataset_info {
  size_t n_internal;
  size_t n_external;
  size_t n_events;
  int64_t tau_s;
  int64_t first_time_s;
  int64_t last_time_s;
  size_t n_friendships;
  size_t dropped_profile_rows;
} cs_dataset_info;

typedef struct cs_round {
  int64_t round_index;
  int64_t start_s;
  int64_t end_s;
  size_t sensing_count;
  size_t observed_edges;
  size_t truth_edges;
  double coverage_ratio;
} cs_round;

typedef struct cs_oracle_row {
  int64_t round_index;
  int64_t n;
  size_t oracle_edges;
  size_t random_edges;
  size_t greedy_edges;
  size_t hcontext_edges;
} cs_oracle_row;

/* Axes with count 0 keep the base config's value. */
typedef struct cs_sweep_grid {
  const int64_t* ts_seconds;
  size_t ts_count;
  const double* n_fractions;
  size_t n_fraction_count;
  const int64_t* n_counts;
  size_t n_count_count;
  const cs_algorithm* algorithms;
  size_t algorithm_count;
  const cs_bootstrap* bootstraps;
  size_t bootstrap_count;
  const uint64_t* seeds;
  size_t seed_count;
} cs_sweep_grid;

CS_API const char* cs_version(void);
CS_API const char* cs_last_error(void);
CS_API const char* cs_status_name(cs_status status);

CS_API const char* cs_algorithm_name(cs_algorithm algorithm);
CS_API const char* cs_bootstrap_name(cs_bootstrap bootstrap);
CS_API cs_status cs_parse_algorithm(const char* name, cs_algorithm* out);
CS_API cs_status cs_parse_bootstrap(const char* name, cs_bootstrap* out);

CS_API void cs_synth_params_default(cs_synth_params* out);
CS_API void cs_sim_config_default(cs_sim_config* out);

/* Datasets ------------------------------------------------------------- */

CS_API cs_status cs_dataset_generate(const cs_synth_params* params, uint64_t seed,
                                     cs_dataset* out);
/* friends_path and interests_path may be NULL. */
CS_API cs_status cs_dataset_load(const char* contacts_path, const char* devices_path,
                                 const char* friends_path, const char* interests_path,
                                 int64_t tau_s, cs_dataset* out);
/* Writes contacts.csv, devices.csv, friends.csv, interests.csv and, for
 * generated datasets, manifest.json. The directory is created if needed. */
CS_API cs_status cs_dataset_write(cs_dataset dataset, const char* dir);
CS_API cs_status cs_dataset_info_get(cs_dataset dataset, cs_dataset_info* out);
CS_API void cs_dataset_destroy(cs_dataset dataset);

/* Resolved budget n and keep count k for a config on this dataset. */
CS_API cs_status cs_resolve(cs_dataset dataset, const cs_sim_config* config, int64_t* n,
                            int64_t* k);

/* Runs ----------------------------------------------------------------- */

CS_API cs_status cs_run(cs_dataset dataset, const cs_sim_config* config, cs_report* out);
CS_API size_t cs_report_round_count(cs_report report);
CS_API int64_t cs_report_truncated_rounds(cs_report report);
CS_API cs_status cs_report_round(cs_report report, size_t index, cs_round* out);
/* Copies up to capacity ids into ids; *count receives the full size. */
CS_API cs_status cs_report_sensing_set(cs_report report, size_t index, uint32_t* ids,
                                       size_t capacity, size_t* count);
CS_API cs_status cs_report_write_csv(cs_report report, const char* path);
/* The manifest echoes the resolved config and the dataset's input digests. */
CS_API cs_status cs_report_write_manifest(cs_report report, cs_dataset dataset,
                                          const char* path);
CS_API void cs_report_destroy(cs_report report);

/* Oracle comparison ---------------------------------------------------- */

CS_API cs_status cs_oracle_compare(cs_dataset dataset, const cs_sim_config* config,
                                   cs_oracle_report* out);
CS_API size_t cs_oracle_report_row_count(cs_oracle_report report);
CS_API cs_status cs_oracle_report_row(cs_oracle_report report, size_t index, cs_oracle_row* out);
CS_API cs_status cs_oracle_report_write_csv(cs_oracle_report report, const char* path);
CS_API cs_status cs_oracle_report_write_manifest(cs_oracle_report report, cs_dataset dataset,
                                                 const char* path);
CS_API void cs_oracle_report_destroy(cs_oracle_report report);

/* Sweeps --------------------------------------------------------------- */

CS_API cs_status cs_sweep_run(cs_dataset dataset, const cs_sim_config* base,
                              const cs_sweep_grid* grid, cs_sweep* out);
CS_API size_t cs_sweep_point_count(cs_sweep sweep);
/* The returned report is owned by the sweep. */
CS_API cs_status cs_sweep_point(cs_sweep sweep, size_t index, cs_sim_config* config,
                                cs_report* report);
CS_API cs_status cs_sweep_write_csv(cs_sweep sweep, const char* path);
CS_API cs_status cs_sweep_write_manifest(cs_sweep sweep, cs_dataset dataset, const char* path);
CS_API void cs_sweep_destroy(cs_sweep sweep);

#ifdef __cplusplus
}
#endif

#endif /* CROWDSENSE_CROWDSENSE_H_ */
