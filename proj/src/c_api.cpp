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

#include "kpoqml/kpoqml.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kpoqml/config_io.hpp"
#include "kpoqml/dynamics.hpp"
#include "kpoqml/error.hpp"
#include "kpoqml/experiments.hpp"

struct kpo_experiment {
  kpoqml::ExperimentConfig config;
  std::string source;
};

struct kpo_model {
  kpoqml::Model model;
};

struct kpo_record {
  kpoqml::TrainingRecord record;
};

struct kpo_sweep {
  std::vector<double> values;
  std::vector<kpo_record> records;
};

namespace {

thread_local std::string last_error;

kpo_status fail(kpo_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
kpo_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return KPO_OK;
  } catch (const kpoqml::ValidationError& e) {
    return fail(KPO_ERR_CONFIG, e.what());
  } catch (const kpoqml::TruncationError& e) {
    return fail(KPO_ERR_TRUNCATION, e.what());
  } catch (const kpoqml::DimensionError& e) {
    return fail(KPO_ERR_DIMENSION, e.what());
  } catch (const kpoqml::NonFiniteCostError& e) {
    return fail(KPO_ERR_NON_FINITE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(KPO_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(KPO_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(KPO_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(KPO_ERR_RUNTIME, "unknown error");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

kpo_status null_argument(const char* name) {
  return fail(KPO_ERR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* kpo_version(void) { return "0.1.0"; }

const char* kpo_last_error(void) { return last_error.c_str(); }

const char* kpo_status_name(kpo_status status) {
  switch (status) {
    case KPO_OK: return "ok";
    case KPO_ERR_INVALID_ARGUMENT: return "invalid argument";
    case KPO_ERR_CONFIG: return "invalid configuration";
    case KPO_ERR_TRUNCATION: return "truncation error";
    case KPO_ERR_DIMENSION: return "dimension error";
    case KPO_ERR_NON_FINITE: return "non-finite cost";
    case KPO_ERR_RUNTIME: return "runtime error";
  }
  return "unknown status";
}

void kpo_string_free(char* s) { std::free(s); }

kpo_status kpo_experiment_from_json(const char* json, kpo_experiment** out) {
  if (json == nullptr) return null_argument("json");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto exp = std::make_unique<kpo_experiment>(
        kpo_experiment{kpoqml::parse_experiment_config(json), json});
    *out = exp.release();
  });
}

void kpo_experiment_destroy(kpo_experiment* experiment) { delete experiment; }

kpo_status kpo_experiment_to_json(const kpo_experiment* experiment, char** out) {
  if (experiment == nullptr) return null_argument("experiment");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = duplicate(kpoqml::experiment_config_to_json(experiment->config)); });
}

const char* kpo_experiment_variant(const kpo_experiment* experiment) {
  if (experiment == nullptr) return "";
  switch (experiment->config.model.variant) {
    case kpoqml::Variant::kSingleKpo: return "single-kpo";
    case kpoqml::Variant::kKpoNetwork: return "kpo-network";
    case kpoqml::Variant::kMultiInputSingleKpo: return "multi-input-single-kpo";
    case kpoqml::Variant::kQubitBaseline: return "qubit-baseline";
  }
  return "";
}

size_t kpo_experiment_num_params(const kpo_experiment* experiment) {
  return experiment == nullptr ? 0 : experiment->config.model.num_params();
}

kpo_status kpo_experiment_set_theta_seed(kpo_experiment* experiment, uint64_t seed) {
  if (experiment == nullptr) return null_argument("experiment");
  experiment->config.theta_init.seed = seed;
  last_error.clear();
  return KPO_OK;
}

kpo_status kpo_train(const kpo_experiment* experiment, kpo_record** out) {
  if (experiment == nullptr) return null_argument("experiment");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto rec = std::make_unique<kpo_record>(kpo_record{kpoqml::train(experiment->config)});
    *out = rec.release();
  });
}

kpo_status kpo_sweep_run(const kpo_experiment* experiment, const char* axis, const double* values,
                         size_t count, int jobs, kpo_sweep** out) {
  if (experiment == nullptr) return null_argument("experiment");
  if (axis == nullptr) return null_argument("axis");
  if (out == nullptr) return null_argument("out");
  if (values == nullptr && count != 0) return null_argument("values");
  if (jobs < 1) return fail(KPO_ERR_INVALID_ARGUMENT, "jobs must be at least 1");
  *out = nullptr;
  const std::string name(axis);
  if (name != "alpha" && name != "nsamples") {
    return fail(KPO_ERR_INVALID_ARGUMENT, "axis must be 'alpha' or 'nsamples'");
  }
  return guarded([&] {
    auto sweep = std::make_unique<kpo_sweep>();
    std::vector<kpoqml::SweepPoint> points;
    if (name == "alpha") {
      std::vector<double> alphas = values != nullptr
                                       ? std::vector<double>(values, values + count)
                                       : kpoqml::sweep_alpha_values(experiment->source);
      points = kpoqml::sweep_alpha(experiment->config, alphas, jobs);
    } else {
      std::vector<int> sizes;
      if (values != nullptr) {
        for (size_t i = 0; i < count; ++i) {
          if (!(values[i] >= 1.0) || values[i] != static_cast<double>(static_cast<int>(values[i]))) {
            throw kpoqml::ValidationError("sweep.nsamples", "expected positive integers");
          }
          sizes.push_back(static_cast<int>(values[i]));
        }
      } else {
        sizes = kpoqml::sweep_sample_sizes(experiment->source);
      }
      points = kpoqml::sweep_sample_size(experiment->config, sizes, jobs);
    }
    for (auto& p : points) {
      sweep->values.push_back(p.value);
      sweep->records.push_back(kpo_record{std::move(p.record)});
    }
    *out = sweep.release();
  });
}

void kpo_sweep_destroy(kpo_sweep* sweep) { delete sweep; }

size_t kpo_sweep_size(const kpo_sweep* sweep) { return sweep == nullptr ? 0 : sweep->records.size(); }

double kpo_sweep_value(const kpo_sweep* sweep, size_t index) {
  if (sweep == nullptr || index >= sweep->values.size()) return 0.0;
  return sweep->values[index];
}

const kpo_record* kpo_sweep_record(const kpo_sweep* sweep, size_t index) {
  if (sweep == nullptr || index >= sweep->records.size()) return nullptr;
  return &sweep->records[index];
}

void kpo_record_destroy(kpo_record* record) { delete record; }

double kpo_record_final_cost(const kpo_record* record) {
  return record == nullptr ? 0.0 : record->record.final_cost;
}

double kpo_record_test_mse(const kpo_record* record) {
  return record == nullptr ? 0.0 : record->record.test_mse;
}

size_t kpo_record_iterations(const kpo_record* record) {
  return record == nullptr ? 0 : record->record.trace.iterations;
}

size_t kpo_record_theta(const kpo_record* record, double* theta, size_t len) {
  if (record == nullptr) return 0;
  const auto& t = record->record.trace.theta;
  if (theta != nullptr) std::copy_n(t.begin(), std::min(len, t.size()), theta);
  return t.size();
}

kpo_status kpo_record_to_json(const kpo_record* record, char** out) {
  if (record == nullptr) return null_argument("record");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = duplicate(kpoqml::record_to_json(record->record)); });
}

kpo_status kpo_record_fit_csv(const kpo_record* record, char** out) {
  if (record == nullptr) return null_argument("record");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = duplicate(kpoqml::fit_csv(record->record)); });
}

kpo_status kpo_record_spectrum_csv(const kpo_record* record, char** out) {
  if (record == nullptr) return null_argument("record");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = duplicate(kpoqml::spectrum_csv(record->record)); });
}

kpo_status kpo_model_create(const kpo_experiment* experiment, kpo_model** out) {
  if (experiment == nullptr) return null_argument("experiment");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_unique<kpo_model>(kpo_model{kpoqml::Model(experiment->config.model)});
    *out = m.release();
  });
}

void kpo_model_destroy(kpo_model* model) { delete model; }

size_t kpo_model_num_params(const kpo_model* model) {
  return model == nullptr ? 0 : model->model.num_params();
}

size_t kpo_model_input_dim(const kpo_model* model) {
  return model == nullptr ? 0 : model->model.input_dim();
}

size_t kpo_model_output_dim(const kpo_model* model) {
  return model == nullptr ? 0 : model->model.output_dim();
}

kpo_status kpo_model_evaluate(const kpo_model* model, const double* x, size_t x_len,
                              const double* theta, size_t theta_len, double* out,
                              size_t out_len) {
  if (model == nullptr) return null_argument("model");
  if (x == nullptr) return null_argument("x");
  if (theta == nullptr) return null_argument("theta");
  if (out == nullptr) return null_argument("out");
  const auto& m = model->model;
  if (x_len != m.input_dim()) {
    return fail(KPO_ERR_INVALID_ARGUMENT, "x has " + std::to_string(x_len) + " entries, expected " +
                                              std::to_string(m.input_dim()));
  }
  if (theta_len != m.num_params()) {
    return fail(KPO_ERR_INVALID_ARGUMENT, "theta has " + std::to_string(theta_len) +
                                              " entries, expected " + std::to_string(m.num_params()));
  }
  if (out_len != m.output_dim()) {
    return fail(KPO_ERR_INVALID_ARGUMENT, "out has " + std::to_string(out_len) +
                                              " entries, expected " + std::to_string(m.output_dim()));
  }
  return guarded([&] {
    const std::vector<double> f = m.evaluate({x, x_len}, {theta, theta_len});
    std::copy(f.begin(), f.end(), out);
  });
}

void kpo_prepare_defaults(kpo_prepare_params* params) {
  if (params == nullptr) return;
  const kpoqml::AdiabaticSchedule s;
  params->chi = s.chi;
  params->pump = s.pump_final;
  params->drive = s.drive;
  params->detuning_initial = s.detuning_initial;
  params->total_time = s.total_time;
  params->num_steps = s.num_steps;
  params->cutoff = 25;
}

kpo_status kpo_prepare(const kpo_prepare_params* params, double* fidelity, char** trace_csv) {
  if (params == nullptr) return null_argument("params");
  if (fidelity == nullptr) return null_argument("fidelity");
  return guarded([&] {
    kpoqml::AdiabaticSchedule s;
    s.chi = params->chi;
    s.pump_final = params->pump;
    s.drive = params->drive;
    s.detuning_initial = params->detuning_initial;
    s.total_time = params->total_time;
    s.num_steps = params->num_steps;
    if (params->cutoff < 2) throw kpoqml::ValidationError("cutoff", "must be at least 2");
    const kpoqml::AdiabaticResult result = kpoqml::adiabatic_prepare(s, kpoqml::ModeSpace(params->cutoff));
    *fidelity = result.fidelity;
    if (trace_csv != nullptr) *trace_csv = duplicate(kpoqml::fidelity_csv(result.trace));
  });
}

}  // extern "C"
