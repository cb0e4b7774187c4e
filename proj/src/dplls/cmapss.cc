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

#include "dplls/cmapss.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "dplls/csv_io.h"
#include "dplls/error.h"
#include "dplls/mle.h"
#include "dplls/parallel.h"
#include "dplls/standardize.h"

namespace dplls {
namespace {

constexpr int kColumns = 2 + kCmapssSettings + kCmapssSensors;

int ParseInteger(const std::string& token, const std::string& where) {
  const double value = ParseDouble(token, where);
  Require(value == std::floor(value) && std::abs(value) < 1e9,
          ErrorCode::kParse, where + ": expected an integer, got '" + token + "'");
  return static_cast<int>(value);
}

Dataset FeaturesToDataset(const std::vector<FusedFeatures>& rows,
                          const Family& family) {
  Require(!rows.empty(), ErrorCode::kInvalidArgument, "no engines to regress");
  const auto n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index k = rows.front().features.size();
  Matrix x(n, k);
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x.row(i) = rows[static_cast<std::size_t>(i)].features.transpose();
    y(i) = rows[static_cast<std::size_t>(i)].ttf;
  }
  return Dataset(std::move(x), std::move(y), family);
}

}  // namespace

std::vector<EngineSignal> ParseCmapssFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  Require(static_cast<bool>(in), ErrorCode::kIo,
          "cannot open CMAPSS file '" + path.string() + "'");

  std::map<int, std::vector<std::vector<double>>> rows_by_unit;
  std::map<int, std::vector<int>> cycles_by_unit;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_number);
    Require(static_cast<int>(tokens.size()) == kColumns, ErrorCode::kParse,
            where + ": expected " + std::to_string(kColumns) +
                " columns, found " + std::to_string(tokens.size()));
    const int unit = ParseInteger(tokens[0], where);
    const int cycle = ParseInteger(tokens[1], where);
    std::vector<int>& cycles = cycles_by_unit[unit];
    Require(cycle == static_cast<int>(cycles.size()) + 1, ErrorCode::kParse,
            where + ": engine " + std::to_string(unit) + " expected cycle " +
                std::to_string(cycles.size() + 1) + ", found " +
                std::to_string(cycle));
    cycles.push_back(cycle);
    std::vector<double> values(kCmapssSettings + kCmapssSensors);
    for (std::size_t c = 0; c < values.size(); ++c) {
      values[c] = ParseDouble(tokens[c + 2], where);
    }
    rows_by_unit[unit].push_back(std::move(values));
  }
  Require(!rows_by_unit.empty(), ErrorCode::kParse,
          "CMAPSS file '" + path.string() + "' has no rows");

  std::vector<EngineSignal> signals;
  int expected_id = 1;
  for (auto& [unit, rows] : rows_by_unit) {
    Require(unit == expected_id, ErrorCode::kParse,
            "CMAPSS file '" + path.string() + "': engine " +
                std::to_string(expected_id) + " is missing");
    ++expected_id;
    EngineSignal s;
    s.engine_id = unit;
    s.cycle = std::move(cycles_by_unit[unit]);
    const auto m = static_cast<Eigen::Index>(rows.size());
    s.settings.resize(m, kCmapssSettings);
    s.sensors.resize(m, kCmapssSensors);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& r = rows[static_cast<std::size_t>(i)];
      for (int c = 0; c < kCmapssSettings; ++c) s.settings(i, c) = r[c];
      for (int c = 0; c < kCmapssSensors; ++c) {
        s.sensors(i, c) = r[kCmapssSettings + c];
      }
    }
    signals.push_back(std::move(s));
  }
  return signals;
}

CmapssData IngestCmapss(const std::filesystem::path& train_path,
                        const std::filesystem::path& test_path,
                        const std::filesystem::path& truth_path) {
  for (const auto& p : {train_path, test_path, truth_path}) {
    Require(std::filesystem::exists(p), ErrorCode::kIo,
            "CMAPSS file not found: '" + p.string() + "'");
  }
  CmapssData data;
  data.train = ParseCmapssFile(train_path);
  for (EngineSignal& s : data.train) s.ttf = s.cycle.back();
  data.test = ParseCmapssFile(test_path);

  std::ifstream truth(truth_path);
  Require(static_cast<bool>(truth), ErrorCode::kIo,
          "cannot open truth file '" + truth_path.string() + "'");
  std::vector<int> remaining;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(truth, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    remaining.push_back(ParseInteger(
        token, truth_path.string() + ":" + std::to_string(line_number)));
  }
  Require(remaining.size() == data.test.size(), ErrorCode::kParse,
          "truth file '" + truth_path.string() + "' has " +
              std::to_string(remaining.size()) + " entries but the test file has " +
              std::to_string(data.test.size()) + " engines");
  for (std::size_t i = 0; i < data.test.size(); ++i) {
    data.test[i].ttf = data.test[i].cycle.back() + remaining[i];
  }
  return data;
}

std::string SerializeCmapss(const std::vector<EngineSignal>& signals) {
  std::ostringstream out;
  for (const EngineSignal& s : signals) {
    for (Eigen::Index i = 0; i < s.cycles(); ++i) {
      out << s.engine_id << ' ' << s.cycle[static_cast<std::size_t>(i)];
      for (int c = 0; c < kCmapssSettings; ++c) {
        out << ' ' << FormatDouble(s.settings(i, c));
      }
      for (int c = 0; c < kCmapssSensors; ++c) {
        out << ' ' << FormatDouble(s.sensors(i, c));
      }
      out << '\n';
    }
  }
  return out.str();
}

std::vector<EngineSignal> TruncateSignals(
    const std::vector<EngineSignal>& signals, int horizon) {
  Require(horizon >= 1, ErrorCode::kInvalidArgument, "horizon must be >= 1");
  std::vector<EngineSignal> kept;
  for (const EngineSignal& s : signals) {
    Require(s.ttf.has_value(), ErrorCode::kInvalidArgument,
            "engine " + std::to_string(s.engine_id) + " has no time-to-failure");
    if (*s.ttf < horizon || s.cycles() < horizon) continue;
    EngineSignal cut = s;
    cut.cycle.resize(static_cast<std::size_t>(horizon));
    cut.settings = s.settings.topRows(horizon);
    cut.sensors = s.sensors.topRows(horizon);
    kept.push_back(std::move(cut));
  }
  return kept;
}

Vector FlattenSignal(const EngineSignal& signal,
                     const std::vector<int>& sensor_ids) {
  const Eigen::Index t = signal.cycles();
  Vector flat(static_cast<Eigen::Index>(sensor_ids.size()) * t);
  Eigen::Index at = 0;
  for (int id : sensor_ids) {
    Require(id >= 1 && id <= kCmapssSensors, ErrorCode::kInvalidArgument,
            "sensor id " + std::to_string(id) + " outside 1..21");
    flat.segment(at, t) = signal.sensors.col(id - 1);
    at += t;
  }
  return flat;
}

PcaBasis FitPca(const Matrix& training_rows) {
  const Eigen::Index n = training_rows.rows();
  Require(n >= 2, ErrorCode::kInvalidArgument, "PCA needs at least two rows");
  PcaBasis basis;
  basis.mean = training_rows.colwise().mean().transpose();
  const Matrix centered = training_rows.rowwise() - basis.mean.transpose();

  // Right singular vectors of the centered data are the covariance
  // eigenvectors; singular values come out in descending order.
  Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  basis.variances = s.cwiseAbs2() / static_cast<double>(n - 1);
  basis.components = svd.matrixV();

  const double tol = std::max(basis.variances(0), 1e-300) * 1e-10;
  basis.rank = 0;
  while (basis.rank < basis.variances.size() &&
         basis.variances(basis.rank) > tol) {
    ++basis.rank;
  }
  for (Eigen::Index c = 0; c < basis.components.cols(); ++c) {
    Eigen::Index arg = 0;
    basis.components.col(c).cwiseAbs().maxCoeff(&arg);
    if (basis.components(arg, c) < 0.0) basis.components.col(c) *= -1.0;
  }
  return basis;
}

Matrix ProjectPca(const PcaBasis& basis, const Matrix& rows, Eigen::Index k) {
  Require(k >= 1 && k <= basis.rank, ErrorCode::kInvalidArgument,
          "requested " + std::to_string(k) +
              " principal components but the training rank is " +
              std::to_string(basis.rank));
  Require(rows.cols() == basis.mean.size(), ErrorCode::kShapeMismatch,
          "rows do not match the PCA input dimension");
  return (rows.rowwise() - basis.mean.transpose()) *
         basis.components.leftCols(k);
}

namespace {

Matrix StackFlattened(const std::vector<EngineSignal>& signals,
                      const std::vector<int>& sensor_ids) {
  Require(!signals.empty(), ErrorCode::kInvalidArgument, "no engines to fuse");
  const Vector first = FlattenSignal(signals.front(), sensor_ids);
  Matrix rows(static_cast<Eigen::Index>(signals.size()), first.size());
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const Vector flat = FlattenSignal(signals[i], sensor_ids);
    Require(flat.size() == first.size(), ErrorCode::kShapeMismatch,
            "engines have different signal lengths; truncate first");
    rows.row(static_cast<Eigen::Index>(i)) = flat.transpose();
  }
  return rows;
}

std::vector<FusedFeatures> Label(const std::vector<EngineSignal>& signals,
                                 const Matrix& scores) {
  std::vector<FusedFeatures> out;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    out.push_back({signals[i].engine_id,
                   scores.row(static_cast<Eigen::Index>(i)).transpose(),
                   static_cast<double>(signals[i].ttf.value_or(0))});
  }
  return out;
}

}  // namespace

FusedSplit PcaFuse(const std::vector<EngineSignal>& train,
                   const std::vector<EngineSignal>& test,
                   const std::vector<int>& sensor_ids, Eigen::Index k) {
  const PcaBasis basis = FitPca(StackFlattened(train, sensor_ids));
  FusedSplit split;
  split.train =
      Label(train, ProjectPca(basis, StackFlattened(train, sensor_ids), k));
  if (!test.empty()) {
    split.test =
        Label(test, ProjectPca(basis, StackFlattened(test, sensor_ids), k));
  }
  return split;
}

std::vector<SweepCell> RunCaseStudy(const CmapssData& truncated,
                                    const CaseStudyConfig& config,
                                    SweepFactor factor,
                                    const std::vector<double>& values) {
  Require(factor != SweepFactor::kSampleSize, ErrorCode::kInvalidArgument,
          "the case study sweeps dimension or epsilon only");
  Require(!values.empty(), ErrorCode::kInvalidArgument,
          "case study sweep needs at least one value");
  Require(config.repetitions >= 1, ErrorCode::kInvalidArgument,
          "repetitions must be >= 1");

  const Matrix train_rows = StackFlattened(truncated.train, config.sensor_ids);
  const Matrix test_rows = StackFlattened(truncated.test, config.sensor_ids);
  const PcaBasis basis = FitPca(train_rows);

  std::vector<SweepCell> cells;
  for (double value : values) {
    Eigen::Index k = config.fixed_k;
    double epsilon = config.fixed_epsilon;
    if (factor == SweepFactor::kDimension) {
      Require(value >= 1 && value == std::floor(value),
              ErrorCode::kInvalidArgument, "component counts must be integers");
      k = static_cast<Eigen::Index>(value);
    } else {
      epsilon = value;
    }
    const PrivacyBudget budget(epsilon);
    const Dataset train = FeaturesToDataset(
        Label(truncated.train, ProjectPca(basis, train_rows, k)), config.family);
    const Dataset test = FeaturesToDataset(
        Label(truncated.test, ProjectPca(basis, test_rows, k)), config.family);
    const ScalingSpec spec = FitScaling(train);
    const StandardizedDataset scaled = ApplyScaling(train, spec);

    SweepCell cell;
    cell.factor = SweepFactorName(factor);
    cell.value = value;

    ArmErrors exact;
    try {
      exact = EvaluateOnTest(FitMle(scaled, config.family).params, test.x(),
                             test.y(), spec, config.family, config.predict_mode);
    } catch (const Error& e) {
      exact.failed = true;
      exact.failure = e.what();
    }
    PoolArm(cell.nondp, exact, 0);

    std::vector<ArmErrors> runs(static_cast<std::size_t>(config.repetitions));
    ParallelFor(runs.size(), config.threads, [&](std::size_t r) {
      const std::uint64_t seed = DeriveSeed(config.seed_base + r, 2);
      try {
        const FitResult fit =
            FitDp(scaled, config.family, budget, seed, config.solver);
        runs[r] = EvaluateOnTest(fit.params, test.x(), test.y(), spec,
                                 config.family, config.predict_mode);
      } catch (const Error& e) {
        runs[r].failed = true;
        runs[r].failure = e.what();
      }
    });
    for (std::size_t r = 0; r < runs.size(); ++r) {
      PoolArm(cell.dp, runs[r], static_cast<int>(r));
    }
    FinalizePool(cell.dp);
    FinalizePool(cell.nondp);
    cells.push_back(std::move(cell));
  }
  return cells;
}

}  // namespace dplls
