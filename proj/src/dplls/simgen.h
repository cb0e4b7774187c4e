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

#ifndef DPLLS_SIMGEN_H_
#define DPLLS_SIMGEN_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dplls/dp_solver.h"
#include "dplls/evaluate.h"
#include "dplls/types.h"

namespace dplls {

struct SimConfig {
  Family family = Family::Sev();
  Eigen::Index n = 10000;
  Eigen::Index d = 5;
  double epsilon = 0.5;
  int repetitions = 100;
  double train_fraction = 0.8;
  std::uint64_t seed_base = 1;
  int threads = 1;
  PredictMode predict_mode = PredictMode::kLocation;
  SolverOptions solver;

  // Throws kInvalidArgument on n <= d + 2, repetitions < 1, bad fractions.
  void Validate() const;
};

struct SyntheticData {
  Dataset data;
  ModelParams truth;  // beta on the raw predictor scale, sigma = 1
};

// x_ij ~ N(0, 1), beta ~ N(0, 1) (drawn per dataset), errors from the
// standard SEV or logistic distribution by inverse CDF. Log-response families
// store exp of the generated response.
SyntheticData GenerateSynthetic(Eigen::Index n, Eigen::Index d,
                                const Family& family, std::uint64_t seed);

// Standard SEV / logistic quantile functions (location 0, scale 1).
double SevQuantile(double u);
double LogisticQuantile(double u);

// Independent sub-stream seed derived from a repetition seed.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

// Per-arm outcome of one repetition.
struct ArmErrors {
  std::vector<double> errors;
  long long excluded_near_zero = 0;
  bool failed = false;
  std::string failure;
};

struct TrialResult {
  ArmErrors dp;
  ArmErrors nondp;
};

// Relative errors of `params` on raw test rows.
ArmErrors EvaluateOnTest(const ModelParams& params, const Matrix& x_test,
                         const Vector& y_test, const ScalingSpec& spec,
                         const Family& family, PredictMode mode);

// seed = seed_base + repetition. Generates data, splits train/test with a
// seeded shuffle, fits the scaling on train, fits the private and exact
// models on train and scores both on test.
TrialResult RunTrial(const SimConfig& config, int repetition);

enum class SweepFactor { kDimension, kSampleSize, kEpsilon };

SweepFactor ParseSweepFactor(std::string_view name);
std::string SweepFactorName(SweepFactor factor);

// Pooled outcome of one factor level over all repetitions.
struct ArmPool {
  std::vector<int> repetition;  // parallel to errors
  std::vector<double> errors;
  long long excluded_near_zero = 0;
  int failures = 0;
  std::optional<ErrorSummary> summary;  // absent when every repetition failed
};

struct SweepCell {
  std::string factor;
  double value = 0.0;
  ArmPool dp;
  ArmPool nondp;
};

// Appends one repetition's arm to the pool. FinalizePool computes the
// summary once every repetition is in.
void PoolArm(ArmPool& pool, const ArmErrors& arm, int repetition);
void FinalizePool(ArmPool& pool);

SimConfig WithFactor(SimConfig config, SweepFactor factor, double value);

std::vector<SweepCell> RunSweep(SweepFactor factor, const SimConfig& config,
                                const std::vector<double>& values);

// One summary row per arm of a cell.
struct ExperimentRecord {
  std::string factor_name;
  double factor_value = 0.0;
  std::string arm;
  std::optional<ErrorSummary> summary;
  int failures = 0;
  std::filesystem::path raw_errors_path;  // relative to the output directory
};

std::filesystem::path RawErrorsPath(const std::string& factor, double value,
                                    const std::string& arm);

// Writes summary.csv and raw/<factor>_<value>_<arm>.csv under out_dir.
// Returns the records in file order; output paths are relative to out_dir.
std::vector<ExperimentRecord> WriteSweepOutputs(
    const std::vector<SweepCell>& cells, const std::filesystem::path& out_dir,
    std::vector<std::filesystem::path>* written = nullptr);

}  // namespace dplls

#endif  // DPLLS_SIMGEN_H_
