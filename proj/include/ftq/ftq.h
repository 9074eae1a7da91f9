// Copyright 2026 The ftq Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the ftq library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Every fallible call returns an ftq_status; on failure ftq_last_error()
 * describes the most recent error on the calling thread. Strings returned
 * through char** out-parameters are owned by the caller and released with
 * ftq_string_free().
 */

#ifndef FTQ_FTQ_H
#define FTQ_FTQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(FTQ_BUILDING_LIBRARY)
#define FTQ_API __attribute__((visibility("default")))
#else
#define FTQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ftq_status {
    FTQ_OK = 0,
    FTQ_INVALID_ARGUMENT = 1,
    FTQ_DEGENERATE_VECTOR = 2,
    FTQ_SINGULAR_MAP = 3,
    FTQ_BOUNDARY_DIVERGENCE = 4,
    FTQ_NUMERICAL_BOUNDARY = 5,
    FTQ_MASS_SHELL_VIOLATION = 6,
    FTQ_STEP_FAILURE = 7,
    FTQ_LEFT_FUTURE_TUBE = 8,
    FTQ_INSUFFICIENT_SAMPLES = 9,
    FTQ_ZERO_PROBABILITY_REGION = 10,
    FTQ_NON_INTEGRABLE = 11,
    FTQ_INTERNAL = 99
} ftq_status;

typedef struct ftq_config ftq_config;
typedef struct ftq_state ftq_state;
typedef struct ftq_region ftq_region;

FTQ_API const char *ftq_version(void);
FTQ_API const char *ftq_status_name(ftq_status status);
FTQ_API const char *ftq_last_error(void);
FTQ_API void ftq_string_free(char *s);

/* Run configuration: hbar, seed, sample count, tolerance, thread count. */
FTQ_API ftq_status ftq_config_create(ftq_config **out);
FTQ_API void ftq_config_destroy(ftq_config *cfg);
FTQ_API ftq_status ftq_config_set_hbar(ftq_config *cfg, double hbar);
FTQ_API ftq_status ftq_config_set_seed(ftq_config *cfg, uint64_t seed);
FTQ_API ftq_status ftq_config_set_samples(ftq_config *cfg, size_t samples);
FTQ_API ftq_status ftq_config_set_tolerance(ftq_config *cfg, double tol);
FTQ_API ftq_status ftq_config_set_threads(ftq_config *cfg, size_t threads);

/* States and regions, using the JSON schemas documented in the README. */
FTQ_API ftq_status ftq_state_from_json(const char *json, ftq_state **out);
FTQ_API ftq_status ftq_state_to_json(const ftq_state *state, char **out);
FTQ_API void ftq_state_destroy(ftq_state *state);
FTQ_API ftq_status ftq_region_from_json(const char *json, ftq_region **out);
FTQ_API void ftq_region_destroy(ftq_region *region);

/* Reproducing kernel K(z, w-bar) for z = x - i r, w = y - i s. out = {re, im}. */
FTQ_API ftq_status ftq_kernel(const double x[4], const double r[4], const double y[4], const double s[4],
                              double out[2]);

/* Probability of a region by Monte Carlo. */
FTQ_API ftq_status ftq_probability(const ftq_config *cfg, const ftq_state *state, const ftq_region *region,
                                   double *probability, double *std_err);

typedef struct ftq_measure_options {
    size_t n_foci;      /* foci in the sampled post-measurement mixture */
    int unrecorded;     /* nonzero: decohere instead of conditioning on the region */
    size_t scan_points; /* points in the localization scan; 0 disables it */
} ftq_measure_options;

/*
 * Measurement. out_json receives {"probability", "std_err", "state", "max_ratio"};
 * out_scan_csv (may be NULL) receives the localization scan of the outgoing state.
 * region may be NULL when unrecorded is set.
 */
FTQ_API ftq_status ftq_measure(const ftq_config *cfg, const ftq_state *state, const ftq_region *region,
                               const ftq_measure_options *opts, char **out_json, char **out_scan_csv);

/*
 * Trajectory integration. spec_json selects the system:
 *   {"system": "free" | "charged" | "twobody", "m", "q", "B", "k", "m1", "m2",
 *    "s_max", "steps", "method": "rk4" | "midpoint"}
 * Missing fields take defaults. out_csv receives the trajectory table,
 * out_report_json the conservation and closed-form comparison report.
 */
FTQ_API ftq_status ftq_dynamics(const ftq_config *cfg, const char *spec_json, char **out_csv,
                                char **out_report_json);

/* Runs a verification suite ("all" or one of ftq_suite_names()). */
FTQ_API ftq_status ftq_verify(const ftq_config *cfg, const char *suite, char **out_json, int *all_pass);

/* Comma-separated list of the suite names. */
FTQ_API const char *ftq_suite_names(void);

#ifdef __cplusplus
}
#endif

#endif
