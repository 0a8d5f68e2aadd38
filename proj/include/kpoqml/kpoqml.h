// Copyright 2026 The kpoqml Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KPOQML_KPOQML_H_
#define KPOQML_KPOQML_H_

/* C interface to the kpoqml library.
 *
 * Objects are opaque handles created by kpo_*_create / kpo_*_from_* calls and
 * released with the matching kpo_*_destroy. Every fallible call returns a
 * kpo_status; on failure kpo_last_error() describes the problem for the
 * calling thread. Strings returned through char** are owned by the caller and
 * released with kpo_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KPO_API __declspec(dllexport)
#else
#define KPO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kpo_status {
  KPO_OK = 0,
  KPO_ERR_INVALID_ARGUMENT = 1, /* null handle, wrong buffer length */
  KPO_ERR_CONFIG = 2,           /* configuration rejected by validation */
  KPO_ERR_TRUNCATION = 3,       /* state does not fit in the Fock cutoff */
  KPO_ERR_DIMENSION = 4,
  KPO_ERR_NON_FINITE = 5,       /* cost evaluated to NaN or inf */
  KPO_ERR_RUNTIME = 6
} kpo_status;

typedef struct kpo_experiment kpo_experiment;
typedef struct kpo_model kpo_model;
typedef struct kpo_record kpo_record;
typedef struct kpo_sweep kpo_sweep;

KPO_API const char* kpo_version(void);
KPO_API const char* kpo_last_error(void);
KPO_API const char* kpo_status_name(kpo_status status);
KPO_API void kpo_string_free(char* s);

/* Experiments ------------------------------------------------------------ */

/* Parses and validates a JSON experiment config. */
KPO_API kpo_status kpo_experiment_from_json(const char* json, kpo_experiment** out);
KPO_API void kpo_experiment_destroy(kpo_experiment* experiment);
/* Fully expanded config, every default written out. */
KPO_API kpo_status kpo_experiment_to_json(const kpo_experiment* experiment, char** out);
/* "single-kpo", "kpo-network", "multi-input-single-kpo" or "qubit-baseline". */
KPO_API const char* kpo_experiment_variant(const kpo_experiment* experiment);
KPO_API size_t kpo_experiment_num_params(const kpo_experiment* experiment);
/* Replaces the parameter-initialization seed; the dataset is unchanged. */
KPO_API kpo_status kpo_experiment_set_theta_seed(kpo_experiment* experiment, uint64_t seed);

KPO_API kpo_status kpo_train(const kpo_experiment* experiment, kpo_record** out);

/* Sweeps over "alpha" or "nsamples". With values == NULL the list comes from
 * the config's "sweep" section, or the built-in defaults. Runs execute on up
 * to `jobs` threads. */
KPO_API kpo_status kpo_sweep_run(const kpo_experiment* experiment, const char* axis,
                                 const double* values, size_t count, int jobs,
                                 kpo_sweep** out);
KPO_API void kpo_sweep_destroy(kpo_sweep* sweep);
KPO_API size_t kpo_sweep_size(const kpo_sweep* sweep);
KPO_API double kpo_sweep_value(const kpo_sweep* sweep, size_t index);
/* Borrowed; valid until the sweep is destroyed. NULL when out of range. */
KPO_API const kpo_record* kpo_sweep_record(const kpo_sweep* sweep, size_t index);

/* Training records --------------------------------------------------------- */

KPO_API void kpo_record_destroy(kpo_record* record);
KPO_API double kpo_record_final_cost(const kpo_record* record);
KPO_API double kpo_record_test_mse(const kpo_record* record);
KPO_API size_t kpo_record_iterations(const kpo_record* record);
/* Copies up to `len` trained parameters; returns the total count. */
KPO_API size_t kpo_record_theta(const kpo_record* record, double* theta, size_t len);
KPO_API kpo_status kpo_record_to_json(const kpo_record* record, char** out);
KPO_API kpo_status kpo_record_fit_csv(const kpo_record* record, char** out);
KPO_API kpo_status kpo_record_spectrum_csv(const kpo_record* record, char** out);

/* Models ----------------------------------------------------------------- */

KPO_API kpo_status kpo_model_create(const kpo_experiment* experiment, kpo_model** out);
KPO_API void kpo_model_destroy(kpo_model* model);
KPO_API size_t kpo_model_num_params(const kpo_model* model);
KPO_API size_t kpo_model_input_dim(const kpo_model* model);
KPO_API size_t kpo_model_output_dim(const kpo_model* model);
/* f(x; theta) into `out` (output_dim values). */
KPO_API kpo_status kpo_model_evaluate(const kpo_model* model, const double* x, size_t x_len,
                                      const double* theta, size_t theta_len, double* out,
                                      size_t out_len);

/* Adiabatic coherent-state preparation ----------------------------------- */

typedef struct kpo_prepare_params {
  double chi;
  double pump;             /* final pump p; target amplitude sqrt(p / chi) */
  double drive;            /* coherent drive r, negative */
  double detuning_initial; /* delta at t = 0, above chi */
  double total_time;
  int num_steps;
  int cutoff;
} kpo_prepare_params;

KPO_API void kpo_prepare_defaults(kpo_prepare_params* params);
/* Final fidelity, plus the "t,fidelity" trace as CSV when trace_csv != NULL. */
KPO_API kpo_status kpo_prepare(const kpo_prepare_params* params, double* fidelity,
                               char** trace_csv);

#ifdef __cplusplus
}
#endif

#endif  // KPOQML_KPOQML_H_
