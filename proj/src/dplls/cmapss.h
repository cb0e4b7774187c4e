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

#ifndef DPLLS_CMAPSS_H_
#define DPLLS_CMAPSS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dplls/dp_solver.h"
#include "dplls/evaluate.h"
#include "dplls/simgen.h"
#include "dplls/types.h"

namespace dplls {

inline constexpr int kCmapssSettings = 3;
inline constexpr int kCmapssSensors = 21;

// One engine's run. Rows are cycles in file order.
struct EngineSignal {
  int engine_id = 0;
  std::vector<int> cycle;  // cycle numbers as read
  Matrix settings;         // cycles x 3 operational settings
  Matrix sensors;          // cycles x 21 sensor readings
  std::optional<int> ttf;  // total life; training engines: last cycle

  Eigen::Index cycles() const { return sensors.rows(); }
};

struct CmapssData {
  std::vector<EngineSignal> train;
  std::vector<EngineSignal> test;
};

// Parses one whitespace-delimited CMAPSS file (unit, cycle, 3 settings,
// 21 sensors per row). Engines must be numbered 1..N with cycles 1, 2, ...
std::vector<EngineSignal> ParseCmapssFile(const std::filesystem::path& path);

// Training ttf = last cycle; test ttf = observed cycles + remaining life from
// the truth file (one integer per line, one line per test engine).
CmapssData IngestCmapss(const std::filesystem::path& train_path,
                        const std::filesystem::path& test_path,
                        const std::filesystem::path& truth_path);

// Same layout the parser reads, numbers written round-trip exact.
std::string SerializeCmapss(const std::vector<EngineSignal>& signals);

// Keeps engines with ttf >= horizon and at least `horizon` observed cycles,
// cut to their first `horizon` rows.
std::vector<EngineSignal> TruncateSignals(const std::vector<EngineSignal>& signals,
                                          int horizon = 150);

// Selected sensors (1-based) flattened sensor-major, time-minor.
Vector FlattenSignal(const EngineSignal& signal,
                     const std::vector<int>& sensor_ids);

// Principal directions of the flattened training signals.
struct PcaBasis {
  Vector mean;
  Matrix components;  // columns, descending variance
  Vector variances;   // eigenvalues of the sample covariance
  Eigen::Index rank = 0;
};

// Sign fixed so each component's largest-magnitude loading is positive.
PcaBasis FitPca(const Matrix& training_rows);

// First k scores of each row. Throws kInvalidArgument when k > rank.
Matrix ProjectPca(const PcaBasis& basis, const Matrix& rows, Eigen::Index k);

struct FusedFeatures {
  int engine_id = 0;
  Vector features;
  double ttf = 0.0;
};

struct FusedSplit {
  std::vector<FusedFeatures> train;
  std::vector<FusedFeatures> test;
};

// Basis fitted on `train` only; test engines are projected onto it.
FusedSplit PcaFuse(const std::vector<EngineSignal>& train,
                   const std::vector<EngineSignal>& test,
                   const std::vector<int>& sensor_ids, Eigen::Index k);

struct CaseStudyConfig {
  int horizon = 150;
  std::vector<int> sensor_ids = {4, 17, 20};
  Family family = Family::Sev();
  int repetitions = 500;
  std::uint64_t seed_base = 1;
  int threads = 1;
  PredictMode predict_mode = PredictMode::kLocation;
  SolverOptions solver;
  Eigen::Index fixed_k = 3;
  double fixed_epsilon = 5.0;
};

// Dimension sweep varies the number of components at fixed_epsilon; epsilon
// sweep varies epsilon at fixed_k. The exact fit is deterministic and runs
// once per cell; the private fit runs `repetitions` times.
std::vector<SweepCell> RunCaseStudy(const CmapssData& truncated,
                                    const CaseStudyConfig& config,
                                    SweepFactor factor,
                                    const std::vector<double>& values);

}  // namespace dplls

#endif  // DPLLS_CMAPSS_H_
