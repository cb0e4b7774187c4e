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

#include "dplls/dplls.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dplls/cmapss.h"
#include "dplls/csv_io.h"
#include "dplls/dp_solver.h"
#include "dplls/error.h"
#include "dplls/evaluate.h"
#include "dplls/functional_mechanism.h"
#include "dplls/mle.h"
#include "dplls/simgen.h"
#include "dplls/standardize.h"
#include "json.hpp"

struct dplls_dataset {
  dplls::Dataset data;
  std::vector<std::string> names;
};

struct dplls_fit {
  dplls::FitResult result;
  dplls::ScalingSpec spec;
  dplls::Family family;
  bool private_fit = false;
  double epsilon = 0.0;
};

struct dplls_sweep {
  std::vector<dplls::SweepCell> cells;
  std::vector<std::string> written;
};

struct dplls_cmapss {
  dplls::CmapssData raw;
  dplls::CmapssData truncated;
};

namespace {

thread_local std::string last_error;

dplls_status ToStatus(dplls::ErrorCode code) {
  switch (code) {
    case dplls::ErrorCode::kInvalidArgument:
      return DPLLS_ERR_INVALID_ARGUMENT;
    case dplls::ErrorCode::kDomain:
      return DPLLS_ERR_DOMAIN;
    case dplls::ErrorCode::kShapeMismatch:
      return DPLLS_ERR_SHAPE_MISMATCH;
    case dplls::ErrorCode::kIo:
      return DPLLS_ERR_IO;
    case dplls::ErrorCode::kParse:
      return DPLLS_ERR_PARSE;
    case dplls::ErrorCode::kNotConverged:
      return DPLLS_ERR_NOT_CONVERGED;
    case dplls::ErrorCode::kDegenerateFit:
      return DPLLS_ERR_DEGENERATE_FIT;
    case dplls::ErrorCode::kNumerical:
      return DPLLS_ERR_NUMERICAL;
  }
  return DPLLS_ERR_INTERNAL;
}

dplls_status Fail(dplls_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename Fn>
dplls_status Guard(Fn&& fn) {
  try {
    fn();
    return DPLLS_OK;
  } catch (const dplls::Error& e) {
    return Fail(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(DPLLS_ERR_INTERNAL, "out of memory");
  } catch (const std::filesystem::filesystem_error& e) {
    return Fail(DPLLS_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return Fail(DPLLS_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(DPLLS_ERR_INTERNAL, "unknown error");
  }
}

void RequireArg(bool ok, const char* what) {
  dplls::Require(ok, dplls::ErrorCode::kInvalidArgument, what);
}

dplls::Family ToFamily(dplls_family family) {
  switch (family) {
    case DPLLS_FAMILY_SEV:
      return dplls::Family::Sev();
    case DPLLS_FAMILY_LOGISTIC:
      return dplls::Family::Logistic();
    case DPLLS_FAMILY_WEIBULL:
      return dplls::Family::Weibull();
    case DPLLS_FAMILY_LOGLOGISTIC:
      return dplls::Family::LogLogistic();
  }
  dplls::Fail(dplls::ErrorCode::kInvalidArgument, "unknown family");
}

dplls_family FromFamily(const dplls::Family& family) {
  if (family.tag == dplls::FamilyTag::kSev) {
    return family.log_response ? DPLLS_FAMILY_WEIBULL : DPLLS_FAMILY_SEV;
  }
  return family.log_response ? DPLLS_FAMILY_LOGLOGISTIC : DPLLS_FAMILY_LOGISTIC;
}

dplls::PredictMode ToMode(dplls_predict_mode mode) {
  switch (mode) {
    case DPLLS_PREDICT_LOCATION:
      return dplls::PredictMode::kLocation;
    case DPLLS_PREDICT_MEDIAN:
      return dplls::PredictMode::kMedian;
  }
  dplls::Fail(dplls::ErrorCode::kInvalidArgument, "unknown predict mode");
}

dplls::SolverOptions ToSolver(dplls_repair repair) {
  dplls::SolverOptions options;
  switch (repair) {
    case DPLLS_REPAIR_CLAMP:
      options.repair = dplls::RepairPolicy::kClampEigenvalues;
      return options;
    case DPLLS_REPAIR_TRIM:
      options.repair = dplls::RepairPolicy::kSpectralTrim;
      return options;
  }
  dplls::Fail(dplls::ErrorCode::kInvalidArgument, "unknown repair policy");
}

dplls::SweepFactor ToFactor(dplls_factor factor) {
  switch (factor) {
    case DPLLS_FACTOR_DIMENSION:
      return dplls::SweepFactor::kDimension;
    case DPLLS_FACTOR_SAMPLE_SIZE:
      return dplls::SweepFactor::kSampleSize;
    case DPLLS_FACTOR_EPSILON:
      return dplls::SweepFactor::kEpsilon;
  }
  dplls::Fail(dplls::ErrorCode::kInvalidArgument, "unknown sweep factor");
}

std::vector<double> ToValues(const double* values, size_t count) {
  RequireArg(values != nullptr && count > 0, "sweep needs at least one value");
  return std::vector<double>(values, values + count);
}

void FillArm(const dplls::ArmPool& pool, dplls_arm_summary* out) {
  if (out == nullptr) return;
  *out = dplls_arm_summary{};
  out->failures = pool.failures;
  out->excluded_near_zero = pool.excluded_near_zero;
  if (pool.summary) {
    out->has_summary = 1;
    out->median = pool.summary->median;
    out->q1 = pool.summary->q1;
    out->q3 = pool.summary->q3;
    out->count = pool.summary->count;
  }
}

char* CopyString(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

nlohmann::json VectorJson(const dplls::Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

extern "C" {

const char* dplls_version(void) { return DPLLS_VERSION_STRING; }

const char* dplls_last_error(void) { return last_error.c_str(); }

const char* dplls_status_name(dplls_status status) {
  switch (status) {
    case DPLLS_OK:
      return "ok";
    case DPLLS_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case DPLLS_ERR_DOMAIN:
      return "domain error";
    case DPLLS_ERR_SHAPE_MISMATCH:
      return "shape mismatch";
    case DPLLS_ERR_IO:
      return "i/o error";
    case DPLLS_ERR_PARSE:
      return "parse error";
    case DPLLS_ERR_NOT_CONVERGED:
      return "not converged";
    case DPLLS_ERR_DEGENERATE_FIT:
      return "degenerate fit";
    case DPLLS_ERR_NUMERICAL:
      return "numerical failure";
    case DPLLS_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

dplls_status dplls_parse_family(const char* name, dplls_family* out) {
  return Guard([&] {
    RequireArg(name != nullptr && out != nullptr, "null argument");
    *out = FromFamily(dplls::ParseFamily(name));
  });
}

dplls_status dplls_parse_predict_mode(const char* name,
                                      dplls_predict_mode* out) {
  return Guard([&] {
    RequireArg(name != nullptr && out != nullptr, "null argument");
    *out = dplls::ParsePredictMode(name) == dplls::PredictMode::kMedian
               ? DPLLS_PREDICT_MEDIAN
               : DPLLS_PREDICT_LOCATION;
  });
}

dplls_status dplls_parse_repair(const char* name, dplls_repair* out) {
  return Guard([&] {
    RequireArg(name != nullptr && out != nullptr, "null argument");
    const std::string text = name;
    if (text == "clamp") {
      *out = DPLLS_REPAIR_CLAMP;
    } else if (text == "trim") {
      *out = DPLLS_REPAIR_TRIM;
    } else {
      dplls::Fail(dplls::ErrorCode::kInvalidArgument,
                  "unknown repair policy '" + text + "' (expected clamp or trim)");
    }
  });
}

dplls_status dplls_parse_factor(const char* name, dplls_factor* out) {
  return Guard([&] {
    RequireArg(name != nullptr && out != nullptr, "null argument");
    switch (dplls::ParseSweepFactor(name)) {
      case dplls::SweepFactor::kDimension:
        *out = DPLLS_FACTOR_DIMENSION;
        break;
      case dplls::SweepFactor::kSampleSize:
        *out = DPLLS_FACTOR_SAMPLE_SIZE;
        break;
      case dplls::SweepFactor::kEpsilon:
        *out = DPLLS_FACTOR_EPSILON;
        break;
    }
  });
}

void dplls_string_free(char* text) { delete[] text; }

dplls_status dplls_dataset_create(const double* x, const double* y, size_t n,
                                  size_t d, dplls_family family,
                                  dplls_dataset** out) {
  return Guard([&] {
    RequireArg(out != nullptr, "null output handle");
    *out = nullptr;
    RequireArg(y != nullptr && (x != nullptr || d == 0), "null data pointer");
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(d);
    dplls::Matrix xm =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>(x, rows, cols);
    dplls::Vector ym = Eigen::Map<const dplls::Vector>(y, rows);
    *out = new dplls_dataset{
        dplls::Dataset(std::move(xm), std::move(ym), ToFamily(family)), {}};
  });
}

dplls_status dplls_dataset_load_csv(const char* path, const char* response,
                                    dplls_family family, dplls_dataset** out) {
  return Guard([&] {
    RequireArg(out != nullptr, "null output handle");
    *out = nullptr;
    RequireArg(path != nullptr && response != nullptr, "null argument");
    dplls::LoadedDataset loaded =
        dplls::ReadDatasetCsv(path, response, ToFamily(family));
    *out = new dplls_dataset{std::move(loaded.data),
                             std::move(loaded.predictor_names)};
  });
}

void dplls_dataset_free(dplls_dataset* dataset) { delete dataset; }

size_t dplls_dataset_rows(const dplls_dataset* dataset) {
  return dataset ? static_cast<size_t>(dataset->data.rows()) : 0;
}

size_t dplls_dataset_features(const dplls_dataset* dataset) {
  return dataset ? static_cast<size_t>(dataset->data.features()) : 0;
}

const char* dplls_dataset_predictor_name(const dplls_dataset* dataset,
                                         size_t j) {
  if (dataset == nullptr || j >= dataset->names.size()) return nullptr;
  return dataset->names[j].c_str();
}

void dplls_fit_options_init(dplls_fit_options* options) {
  if (options == nullptr) return;
  options->private_fit = 1;
  options->epsilon = 1.0;
  options->seed = 1;
  options->repair = DPLLS_REPAIR_CLAMP;
}

dplls_status dplls_fit_model(const dplls_dataset* dataset,
                             const dplls_fit_options* options,
                             dplls_fit** out) {
  return Guard([&] {
    RequireArg(out != nullptr, "null output handle");
    *out = nullptr;
    RequireArg(dataset != nullptr && options != nullptr, "null argument");
    const dplls::Family family = dataset->data.family();
    const dplls::ScalingSpec spec = dplls::FitScaling(dataset->data);
    const dplls::StandardizedDataset scaled =
        dplls::ApplyScaling(dataset->data, spec);
    auto fit = std::make_unique<dplls_fit>();
    fit->spec = spec;
    fit->family = family;
    fit->private_fit = options->private_fit != 0;
    if (fit->private_fit) {
      const dplls::PrivacyBudget budget(options->epsilon);
      fit->epsilon = budget.epsilon();
      fit->result = dplls::FitDp(scaled, family, budget, options->seed,
                                 ToSolver(options->repair));
    } else {
      fit->result = dplls::FitMle(scaled, family);
    }
    *out = fit.release();
  });
}

void dplls_fit_free(dplls_fit* fit) { delete fit; }

double dplls_fit_sigma(const dplls_fit* fit) {
  return fit ? fit->result.params.sigma : 0.0;
}

size_t dplls_fit_coefficient_count(const dplls_fit* fit) {
  return fit ? static_cast<size_t>(fit->result.params.beta.size()) : 0;
}

dplls_status dplls_fit_coefficients(const dplls_fit* fit, double* out,
                                    size_t length) {
  return Guard([&] {
    RequireArg(fit != nullptr && out != nullptr, "null argument");
    const dplls::Vector& beta = fit->result.params.beta;
    dplls::Require(length == static_cast<size_t>(beta.size()),
                   dplls::ErrorCode::kShapeMismatch,
                   "coefficient buffer must hold exactly d + 1 values");
    for (Eigen::Index j = 0; j < beta.size(); ++j) out[j] = beta(j);
  });
}

dplls_status dplls_fit_get_diagnostics(const dplls_fit* fit,
                                       dplls_fit_diagnostics* out) {
  return Guard([&] {
    RequireArg(fit != nullptr && out != nullptr, "null argument");
    const dplls::FitDiagnostics& d = fit->result.diagnostics;
    *out = dplls_fit_diagnostics{};
    out->concavity_repaired = d.concavity_repaired ? 1 : 0;
    out->q_clamped = d.q_clamped ? 1 : 0;
    out->objective_value = d.objective_value;
    out->has_noise_seed = d.noise_seed.has_value() ? 1 : 0;
    out->noise_seed = d.noise_seed.value_or(0);
    out->iterations = d.iterations;
    out->gradient_norm = d.gradient_norm;
  });
}

dplls_status dplls_fit_predict(const dplls_fit* fit, const double* x_row,
                               size_t d, dplls_predict_mode mode,
                               double* out) {
  return Guard([&] {
    RequireArg(fit != nullptr && out != nullptr, "null argument");
    RequireArg(x_row != nullptr || d == 0, "null predictor row");
    dplls::Require(static_cast<Eigen::Index>(d) == fit->spec.features(),
                   dplls::ErrorCode::kShapeMismatch,
                   "predictor row has the wrong length");
    const dplls::Vector row =
        Eigen::Map<const dplls::Vector>(x_row, static_cast<Eigen::Index>(d));
    *out = dplls::Predict(fit->result.params, row, fit->spec, fit->family,
                          ToMode(mode));
  });
}

dplls_status dplls_fit_to_json(const dplls_fit* fit, char** out) {
  return Guard([&] {
    RequireArg(fit != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    const dplls::FitDiagnostics& d = fit->result.diagnostics;
    nlohmann::ordered_json j;
    j["family"] = dplls::FamilyName(fit->family);
    j["private"] = fit->private_fit;
    if (fit->private_fit) {
      j["epsilon"] = fit->epsilon;
    } else {
      j["epsilon"] = nullptr;
    }
    j["sigma"] = fit->result.params.sigma;
    j["beta"] = VectorJson(fit->result.params.beta);
    j["q"] = fit->result.transformed.q;
    j["p"] = VectorJson(fit->result.transformed.p);
    nlohmann::ordered_json diag;
    diag["concavity_repaired"] = d.concavity_repaired;
    diag["q_clamped"] = d.q_clamped;
    diag["objective_value"] = d.objective_value;
    if (d.noise_seed) {
      diag["noise_seed"] = *d.noise_seed;
    } else {
      diag["noise_seed"] = nullptr;
    }
    diag["iterations"] = d.iterations;
    diag["gradient_norm"] = d.gradient_norm;
    j["diagnostics"] = diag;
    nlohmann::ordered_json scaling;
    scaling["alpha"] = VectorJson(fit->spec.alpha);
    scaling["beta_max"] = VectorJson(fit->spec.beta_max);
    scaling["y_lo"] = fit->spec.y_lo;
    scaling["y_hi"] = fit->spec.y_hi;
    j["scaling"] = scaling;
    *out = CopyString(j.dump(2));
  });
}

void dplls_sweep_free(dplls_sweep* sweep) { delete sweep; }

size_t dplls_sweep_cell_count(const dplls_sweep* sweep) {
  return sweep ? sweep->cells.size() : 0;
}

dplls_status dplls_sweep_cell(const dplls_sweep* sweep, size_t i,
                              double* value, dplls_arm_summary* dp,
                              dplls_arm_summary* nondp) {
  return Guard([&] {
    RequireArg(sweep != nullptr, "null sweep");
    RequireArg(i < sweep->cells.size(), "cell index out of range");
    const dplls::SweepCell& cell = sweep->cells[i];
    if (value != nullptr) *value = cell.value;
    FillArm(cell.dp, dp);
    FillArm(cell.nondp, nondp);
  });
}

dplls_status dplls_sweep_write(dplls_sweep* sweep, const char* out_dir) {
  return Guard([&] {
    RequireArg(sweep != nullptr && out_dir != nullptr, "null argument");
    std::vector<std::filesystem::path> written;
    dplls::WriteSweepOutputs(sweep->cells, out_dir, &written);
    sweep->written.clear();
    for (const auto& p : written) sweep->written.push_back(p.generic_string());
  });
}

size_t dplls_sweep_written_count(const dplls_sweep* sweep) {
  return sweep ? sweep->written.size() : 0;
}

const char* dplls_sweep_written_path(const dplls_sweep* sweep, size_t i) {
  if (sweep == nullptr || i >= sweep->written.size()) return nullptr;
  return sweep->written[i].c_str();
}

void dplls_sim_config_init(dplls_sim_config* config) {
  if (config == nullptr) return;
  const dplls::SimConfig defaults;
  config->family = DPLLS_FAMILY_SEV;
  config->n = static_cast<size_t>(defaults.n);
  config->d = static_cast<size_t>(defaults.d);
  config->epsilon = defaults.epsilon;
  config->repetitions = defaults.repetitions;
  config->train_fraction = defaults.train_fraction;
  config->seed_base = defaults.seed_base;
  config->threads = defaults.threads;
  config->predict_mode = DPLLS_PREDICT_LOCATION;
  config->repair = DPLLS_REPAIR_CLAMP;
}

dplls_status dplls_simulate(const dplls_sim_config* config,
                            dplls_factor factor, const double* values,
                            size_t count, dplls_sweep** out) {
  return Guard([&] {
    RequireArg(out != nullptr, "null output handle");
    *out = nullptr;
    RequireArg(config != nullptr, "null config");
    dplls::SimConfig sim;
    sim.family = ToFamily(config->family);
    sim.n = static_cast<Eigen::Index>(config->n);
    sim.d = static_cast<Eigen::Index>(config->d);
    sim.epsilon = config->epsilon;
    sim.repetitions = config->repetitions;
    sim.train_fraction = config->train_fraction;
    sim.seed_base = config->seed_base;
    sim.threads = config->threads;
    sim.predict_mode = ToMode(config->predict_mode);
    sim.solver = ToSolver(config->repair);
    auto sweep = std::make_unique<dplls_sweep>();
    sweep->cells =
        dplls::RunSweep(ToFactor(factor), sim, ToValues(values, count));
    *out = sweep.release();
  });
}

dplls_status dplls_cmapss_load(const char* train_path, const char* test_path,
                               const char* truth_path, int horizon,
                               dplls_cmapss** out) {
  return Guard([&] {
    RequireArg(out != nullptr, "null output handle");
    *out = nullptr;
    RequireArg(train_path && test_path && truth_path, "null CMAPSS path");
    auto data = std::make_unique<dplls_cmapss>();
    data->raw = dplls::IngestCmapss(train_path, test_path, truth_path);
    data->truncated.train = dplls::TruncateSignals(data->raw.train, horizon);
    data->truncated.test = dplls::TruncateSignals(data->raw.test, horizon);
    *out = data.release();
  });
}

void dplls_cmapss_free(dplls_cmapss* data) { delete data; }

dplls_status dplls_cmapss_get_counts(const dplls_cmapss* data,
                                     dplls_cmapss_counts* out) {
  return Guard([&] {
    RequireArg(data != nullptr && out != nullptr, "null argument");
    out->train_engines = data->raw.train.size();
    out->test_engines = data->raw.test.size();
    out->train_kept = data->truncated.train.size();
    out->test_kept = data->truncated.test.size();
  });
}

void dplls_casestudy_config_init(dplls_casestudy_config* config) {
  if (config == nullptr) return;
  const dplls::CaseStudyConfig defaults;
  config->family = DPLLS_FAMILY_SEV;
  config->sensor_ids = nullptr;
  config->sensor_count = 0;
  config->repetitions = defaults.repetitions;
  config->seed_base = defaults.seed_base;
  config->threads = defaults.threads;
  config->predict_mode = DPLLS_PREDICT_LOCATION;
  config->repair = DPLLS_REPAIR_CLAMP;
  config->fixed_components = static_cast<size_t>(defaults.fixed_k);
  config->fixed_epsilon = defaults.fixed_epsilon;
}

dplls_status dplls_casestudy(const dplls_cmapss* data,
                             const dplls_casestudy_config* config,
                             dplls_factor factor, const double* values,
                             size_t count, dplls_sweep** out) {
  return Guard([&] {
    RequireArg(out != nullptr, "null output handle");
    *out = nullptr;
    RequireArg(data != nullptr && config != nullptr, "null argument");
    dplls::CaseStudyConfig cs;
    cs.family = ToFamily(config->family);
    if (config->sensor_ids != nullptr) {
      RequireArg(config->sensor_count > 0, "empty sensor list");
      cs.sensor_ids.assign(config->sensor_ids,
                           config->sensor_ids + config->sensor_count);
    }
    cs.repetitions = config->repetitions;
    cs.seed_base = config->seed_base;
    cs.threads = config->threads;
    cs.predict_mode = ToMode(config->predict_mode);
    cs.solver = ToSolver(config->repair);
    cs.fixed_k = static_cast<Eigen::Index>(config->fixed_components);
    cs.fixed_epsilon = config->fixed_epsilon;
    auto sweep = std::make_unique<dplls_sweep>();
    sweep->cells = dplls::RunCaseStudy(data->truncated, cs, ToFactor(factor),
                                       ToValues(values, count));
    *out = sweep.release();
  });
}

void dplls_verify_config_init(dplls_verify_config* config) {
  if (config == nullptr) return;
  config->family = DPLLS_FAMILY_SEV;
  config->d = 5;
  config->n = 8;
  config->trials = 10000;
  config->ratio_pairs = 1000;
  config->observed_per_pair = 10;
  config->epsilon = 1.0;
  config->seed = 1;
}

dplls_status dplls_verify(const dplls_verify_config* config,
                          dplls_verify_report* out) {
  return Guard([&] {
    RequireArg(config != nullptr && out != nullptr, "null argument");
    RequireArg(config->trials >= 1, "trials must be >= 1");
    RequireArg(config->ratio_pairs >= 1, "ratio pairs must be >= 1");
    const dplls::Family family = ToFamily(config->family);
    const auto n = static_cast<Eigen::Index>(config->n);
    const auto d = static_cast<Eigen::Index>(config->d);
    const dplls::PrivacyBudget budget(config->epsilon);
    *out = dplls_verify_report{};
    out->sensitivity_bound = dplls::Sensitivity(family, d);
    out->sensitivity_observed = dplls::EmpiricalSensitivity(
        family, n, d, config->trials, dplls::DeriveSeed(config->seed, 0));
    out->sensitivity_pass =
        out->sensitivity_observed <= out->sensitivity_bound ? 1 : 0;
    out->epsilon = budget.epsilon();
    out->max_log_ratio = dplls::MaxPrivacyLogRatio(
        family, n, d, budget, config->ratio_pairs, config->observed_per_pair,
        dplls::DeriveSeed(config->seed, 1));
    out->ratio_pass = out->max_log_ratio <= out->epsilon ? 1 : 0;
  });
}

}  // extern "C"
