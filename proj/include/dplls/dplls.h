// Copyright 2026 The dplls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the dplls library: differentially private log-location-scale
 * regression fitted with the functional mechanism, an exact maximum-likelihood
 * baseline, and the simulation / turbofan case-study harness.
 *
 * Every function that can fail returns a dplls_status. On failure the message
 * is available from dplls_last_error() on the same thread until the next
 * failing call. Handles are opaque and must be released with their _free
 * function; freeing NULL is a no-op.
 */

#ifndef DPLLS_DPLLS_H_
#define DPLLS_DPLLS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(DPLLS_BUILDING_LIBRARY)
#define DPLLS_API __declspec(dllexport)
#else
#define DPLLS_API __declspec(dllimport)
#endif
#else
#define DPLLS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dplls_status {
  DPLLS_OK = 0,
  DPLLS_ERR_INVALID_ARGUMENT = 1,
  DPLLS_ERR_DOMAIN = 2,
  DPLLS_ERR_SHAPE_MISMATCH = 3,
  DPLLS_ERR_IO = 4,
  DPLLS_ERR_PARSE = 5,
  DPLLS_ERR_NOT_CONVERGED = 6,
  DPLLS_ERR_DEGENERATE_FIT = 7,
  DPLLS_ERR_NUMERICAL = 8,
  DPLLS_ERR_INTERNAL = 9
} dplls_status;

typedef enum dplls_family {
  DPLLS_FAMILY_SEV = 0,
  DPLLS_FAMILY_LOGISTIC = 1,
  DPLLS_FAMILY_WEIBULL = 2,     /* SEV on log(t) */
  DPLLS_FAMILY_LOGLOGISTIC = 3  /* logistic on log(t) */
} dplls_family;

typedef enum dplls_predict_mode {
  DPLLS_PREDICT_LOCATION = 0,
  DPLLS_PREDICT_MEDIAN = 1
} dplls_predict_mode;

typedef enum dplls_repair {
  DPLLS_REPAIR_CLAMP = 0,  /* clamp eigenvalues to -margin */
  DPLLS_REPAIR_TRIM = 1    /* drop non-concave eigen-directions */
} dplls_repair;

typedef enum dplls_factor {
  DPLLS_FACTOR_DIMENSION = 0,
  DPLLS_FACTOR_SAMPLE_SIZE = 1,
  DPLLS_FACTOR_EPSILON = 2
} dplls_factor;

DPLLS_API const char* dplls_version(void);
DPLLS_API const char* dplls_last_error(void);
DPLLS_API const char* dplls_status_name(dplls_status status);

DPLLS_API dplls_status dplls_parse_family(const char* name, dplls_family* out);
DPLLS_API dplls_status dplls_parse_predict_mode(const char* name,
                                                dplls_predict_mode* out);
DPLLS_API dplls_status dplls_parse_repair(const char* name, dplls_repair* out);
DPLLS_API dplls_status dplls_parse_factor(const char* name, dplls_factor* out);

/* Strings returned through char** out-parameters. */
DPLLS_API void dplls_string_free(char* text);

/* ---- Datasets ---------------------------------------------------------- */

typedef struct dplls_dataset dplls_dataset;

/* x is n-by-d, row-major. The intercept column is added internally. */
DPLLS_API dplls_status dplls_dataset_create(const double* x, const double* y,
                                            size_t n, size_t d,
                                            dplls_family family,
                                            dplls_dataset** out);

/* CSV with a header row; `response` names the response column and every
 * other column is a numeric predictor. */
DPLLS_API dplls_status dplls_dataset_load_csv(const char* path,
                                              const char* response,
                                              dplls_family family,
                                              dplls_dataset** out);

DPLLS_API void dplls_dataset_free(dplls_dataset* dataset);
DPLLS_API size_t dplls_dataset_rows(const dplls_dataset* dataset);
DPLLS_API size_t dplls_dataset_features(const dplls_dataset* dataset);

/* Predictor name from the CSV header, or NULL for array-built datasets. */
DPLLS_API const char* dplls_dataset_predictor_name(const dplls_dataset* dataset,
                                                   size_t j);

/* ---- Fitting ----------------------------------------------------------- */

typedef struct dplls_fit_options {
  int private_fit;  /* nonzero: functional mechanism; zero: exact MLE */
  double epsilon;
  uint64_t seed;
  dplls_repair repair;
} dplls_fit_options;

DPLLS_API void dplls_fit_options_init(dplls_fit_options* options);

typedef struct dplls_fit dplls_fit;

typedef struct dplls_fit_diagnostics {
  int concavity_repaired;
  int q_clamped;
  double objective_value;
  int has_noise_seed;
  uint64_t noise_seed;
  int iterations;
  double gradient_norm;
} dplls_fit_diagnostics;

/* Scaling is fitted on `dataset`; coefficients live on the scaled problem. */
DPLLS_API dplls_status dplls_fit_model(const dplls_dataset* dataset,
                                       const dplls_fit_options* options,
                                       dplls_fit** out);
DPLLS_API void dplls_fit_free(dplls_fit* fit);

DPLLS_API double dplls_fit_sigma(const dplls_fit* fit);

/* d + 1; index 0 is the intercept. */
DPLLS_API size_t dplls_fit_coefficient_count(const dplls_fit* fit);
DPLLS_API dplls_status dplls_fit_coefficients(const dplls_fit* fit,
                                              double* out, size_t length);
DPLLS_API dplls_status dplls_fit_get_diagnostics(const dplls_fit* fit,
                                                 dplls_fit_diagnostics* out);

/* Prediction for one raw row of d predictors, on the original response
 * scale. */
DPLLS_API dplls_status dplls_fit_predict(const dplls_fit* fit,
                                         const double* x_row, size_t d,
                                         dplls_predict_mode mode, double* out);

/* Parameters, diagnostics and the scaling transform as a JSON object. */
DPLLS_API dplls_status dplls_fit_to_json(const dplls_fit* fit, char** out);

/* ---- Sweeps ------------------------------------------------------------ */

typedef struct dplls_sweep dplls_sweep;

typedef struct dplls_arm_summary {
  int has_summary;  /* zero when every repetition failed */
  double median;
  double q1;
  double q3;
  long long count;
  long long excluded_near_zero;
  int failures;
} dplls_arm_summary;

DPLLS_API void dplls_sweep_free(dplls_sweep* sweep);
DPLLS_API size_t dplls_sweep_cell_count(const dplls_sweep* sweep);
DPLLS_API dplls_status dplls_sweep_cell(const dplls_sweep* sweep, size_t i,
                                        double* value, dplls_arm_summary* dp,
                                        dplls_arm_summary* nondp);

/* Writes summary.csv and raw/<factor>_<value>_<arm>.csv under out_dir. */
DPLLS_API dplls_status dplls_sweep_write(dplls_sweep* sweep,
                                         const char* out_dir);

/* Files written by the last dplls_sweep_write, relative to its out_dir. */
DPLLS_API size_t dplls_sweep_written_count(const dplls_sweep* sweep);
DPLLS_API const char* dplls_sweep_written_path(const dplls_sweep* sweep,
                                               size_t i);

typedef struct dplls_sim_config {
  dplls_family family;
  size_t n;
  size_t d;
  double epsilon;
  int repetitions;
  double train_fraction;
  uint64_t seed_base;
  int threads;
  dplls_predict_mode predict_mode;
  dplls_repair repair;
} dplls_sim_config;

DPLLS_API void dplls_sim_config_init(dplls_sim_config* config);

/* One cell per value of `factor`; the other settings come from `config`. */
DPLLS_API dplls_status dplls_simulate(const dplls_sim_config* config,
                                      dplls_factor factor,
                                      const double* values, size_t count,
                                      dplls_sweep** out);

/* ---- Turbofan case study ----------------------------------------------- */

typedef struct dplls_cmapss dplls_cmapss;

/* Reads the train, test and remaining-life files and truncates every engine
 * to its first `horizon` cycles. */
DPLLS_API dplls_status dplls_cmapss_load(const char* train_path,
                                         const char* test_path,
                                         const char* truth_path, int horizon,
                                         dplls_cmapss** out);
DPLLS_API void dplls_cmapss_free(dplls_cmapss* data);

typedef struct dplls_cmapss_counts {
  size_t train_engines;
  size_t test_engines;
  size_t train_kept;
  size_t test_kept;
} dplls_cmapss_counts;

DPLLS_API dplls_status dplls_cmapss_get_counts(const dplls_cmapss* data,
                                               dplls_cmapss_counts* out);

typedef struct dplls_casestudy_config {
  dplls_family family;
  const int* sensor_ids; /* 1-based; NULL selects 4, 17, 20 */
  size_t sensor_count;
  int repetitions;
  uint64_t seed_base;
  int threads;
  dplls_predict_mode predict_mode;
  dplls_repair repair;
  size_t fixed_components;
  double fixed_epsilon;
} dplls_casestudy_config;

DPLLS_API void dplls_casestudy_config_init(dplls_casestudy_config* config);

/* `factor` is DPLLS_FACTOR_DIMENSION (number of principal components) or
 * DPLLS_FACTOR_EPSILON. */
DPLLS_API dplls_status dplls_casestudy(const dplls_cmapss* data,
                                       const dplls_casestudy_config* config,
                                       dplls_factor factor,
                                       const double* values, size_t count,
                                       dplls_sweep** out);

/* ---- Privacy property checks ------------------------------------------- */

typedef struct dplls_verify_config {
  dplls_family family;
  size_t d;
  size_t n;               /* rows per random dataset */
  int trials;             /* neighbouring pairs for the sensitivity check */
  int ratio_pairs;        /* neighbouring pairs for the ratio check */
  int observed_per_pair;  /* mechanism outputs per pair */
  double epsilon;
  uint64_t seed;
} dplls_verify_config;

DPLLS_API void dplls_verify_config_init(dplls_verify_config* config);

typedef struct dplls_verify_report {
  double sensitivity_bound;
  double sensitivity_observed;
  int sensitivity_pass;
  double epsilon;
  double max_log_ratio;
  int ratio_pass;
} dplls_verify_report;

DPLLS_API dplls_status dplls_verify(const dplls_verify_config* config,
                                    dplls_verify_report* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* DPLLS_DPLLS_H_ */
