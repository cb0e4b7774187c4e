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

#include "dplls/simgen.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "dplls/csv_io.h"
#include "dplls/error.h"
#include "dplls/functional_mechanism.h"
#include "dplls/mle.h"
#include "dplls/parallel.h"
#include "dplls/standardize.h"

namespace dplls {
namespace {

constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kSplitStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

// Fisher-Yates with a 64-bit modulo draw; independent of the standard
// library's distribution implementations.
std::vector<Eigen::Index> Shuffled(Eigen::Index n, Rng& rng) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

Dataset TakeRows(const Dataset& data, const std::vector<Eigen::Index>& rows) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  Matrix x(m, data.features());
  Vector y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    x.row(i) = data.x().row(rows[static_cast<std::size_t>(i)]);
    y(i) = data.y()(rows[static_cast<std::size_t>(i)]);
  }
  return Dataset(std::move(x), std::move(y), data.family());
}

// Standard normal via Box-Muller on the open-interval uniform.
double StandardNormal(Rng& rng) {
  const double u1 = UniformOpen(rng);
  const double u2 = UniformOpen(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

void SimConfig::Validate() const {
  Require(d >= 1, ErrorCode::kInvalidArgument, "d must be >= 1");
  Require(n > d + 2, ErrorCode::kInvalidArgument,
          "n must exceed d + 2 (n = " + std::to_string(n) +
              ", d = " + std::to_string(d) + ")");
  Require(repetitions >= 1, ErrorCode::kInvalidArgument,
          "repetitions must be >= 1");
  Require(train_fraction > 0.0 && train_fraction < 1.0,
          ErrorCode::kInvalidArgument, "train fraction must be in (0, 1)");
  Require(std::isfinite(epsilon) && epsilon > 0.0, ErrorCode::kInvalidArgument,
          "epsilon must be finite and > 0");
  const auto train = static_cast<Eigen::Index>(
      std::llround(train_fraction * static_cast<double>(n)));
  Require(train > d + 2 && train < n, ErrorCode::kInvalidArgument,
          "train split of " + std::to_string(train) +
              " rows leaves no test rows or too few training rows");
}

double SevQuantile(double u) { return std::log(-std::log1p(-u)); }

double LogisticQuantile(double u) { return std::log(u / (1.0 - u)); }

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over a stream-offset state.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SyntheticData GenerateSynthetic(Eigen::Index n, Eigen::Index d,
                                const Family& family, std::uint64_t seed) {
  Require(n >= 1 && d >= 1, ErrorCode::kInvalidArgument,
          "synthetic data needs n >= 1 and d >= 1");
  Rng rng(seed);
  Matrix x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = StandardNormal(rng);
  }
  Vector beta(d + 1);
  for (Eigen::Index j = 0; j <= d; ++j) beta(j) = StandardNormal(rng);

  Vector y = x * beta.tail(d);
  y.array() += beta(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = UniformOpen(rng);
    y(i) += family.tag == FamilyTag::kSev ? SevQuantile(u) : LogisticQuantile(u);
  }
  if (family.log_response) y = y.array().exp().matrix();
  return {Dataset(std::move(x), std::move(y), family), {std::move(beta), 1.0}};
}

ArmErrors EvaluateOnTest(const ModelParams& params, const Matrix& x_test,
                         const Vector& y_test, const ScalingSpec& spec,
                         const Family& family, PredictMode mode) {
  ArmErrors out;
  out.errors.reserve(static_cast<std::size_t>(x_test.rows()));
  for (Eigen::Index i = 0; i < x_test.rows(); ++i) {
    double y_hat =
        Predict(params, x_test.row(i).transpose(), spec, family, mode);
    if (std::isnan(y_hat)) y_hat = std::numeric_limits<double>::infinity();
    const std::optional<double> err = RelativeError(y_hat, y_test(i));
    if (err) {
      out.errors.push_back(std::isnan(*err)
                               ? std::numeric_limits<double>::infinity()
                               : *err);
    } else {
      ++out.excluded_near_zero;
    }
  }
  return out;
}

TrialResult RunTrial(const SimConfig& config, int repetition) {
  config.Validate();
  const std::uint64_t seed =
      config.seed_base + static_cast<std::uint64_t>(repetition);
  const SyntheticData synthetic = GenerateSynthetic(
      config.n, config.d, config.family, DeriveSeed(seed, kDataStream));

  Rng split_rng(DeriveSeed(seed, kSplitStream));
  const std::vector<Eigen::Index> order = Shuffled(config.n, split_rng);
  const auto n_train = static_cast<std::size_t>(
      std::llround(config.train_fraction * static_cast<double>(config.n)));
  const Dataset train = TakeRows(
      synthetic.data, {order.begin(), order.begin() + n_train});
  const Dataset test =
      TakeRows(synthetic.data, {order.begin() + n_train, order.end()});

  const ScalingSpec spec = FitScaling(train);
  const StandardizedDataset scaled = ApplyScaling(train, spec);

  TrialResult result;
  auto run_arm = [&](ArmErrors& arm, auto&& fit) {
    try {
      const FitResult fitted = fit();
      arm = EvaluateOnTest(fitted.params, test.x(), test.y(), spec,
                           config.family, config.predict_mode);
    } catch (const Error& e) {
      arm = ArmErrors{};
      arm.failed = true;
      arm.failure = e.what();
    }
  };
  run_arm(result.dp, [&] {
    return FitDp(scaled, config.family, PrivacyBudget(config.epsilon),
                 DeriveSeed(seed, kNoiseStream), config.solver);
  });
  run_arm(result.nondp, [&] { return FitMle(scaled, config.family); });
  return result;
}

SweepFactor ParseSweepFactor(std::string_view name) {
  if (name == "dimension") return SweepFactor::kDimension;
  if (name == "sample_size") return SweepFactor::kSampleSize;
  if (name == "epsilon") return SweepFactor::kEpsilon;
  Fail(ErrorCode::kInvalidArgument,
       "unknown factor '" + std::string(name) +
           "' (expected dimension, sample_size or epsilon)");
}

std::string SweepFactorName(SweepFactor factor) {
  switch (factor) {
    case SweepFactor::kDimension: return "dimension";
    case SweepFactor::kSampleSize: return "sample_size";
    case SweepFactor::kEpsilon: return "epsilon";
  }
  return "unknown";
}

void PoolArm(ArmPool& pool, const ArmErrors& arm, int repetition) {
  if (arm.failed) {
    ++pool.failures;
    return;
  }
  pool.errors.insert(pool.errors.end(), arm.errors.begin(), arm.errors.end());
  pool.repetition.insert(pool.repetition.end(), arm.errors.size(), repetition);
  pool.excluded_near_zero += arm.excluded_near_zero;
}

void FinalizePool(ArmPool& pool) {
  pool.summary.reset();
  if (!pool.errors.empty()) {
    pool.summary = Summarize(pool.errors, pool.excluded_near_zero);
  }
}

SimConfig WithFactor(SimConfig config, SweepFactor factor, double value) {
  switch (factor) {
    case SweepFactor::kDimension:
      Require(value >= 1 && value == std::floor(value),
              ErrorCode::kInvalidArgument, "dimension values must be integers");
      config.d = static_cast<Eigen::Index>(value);
      break;
    case SweepFactor::kSampleSize:
      Require(value >= 1 && value == std::floor(value),
              ErrorCode::kInvalidArgument,
              "sample size values must be integers");
      config.n = static_cast<Eigen::Index>(value);
      break;
    case SweepFactor::kEpsilon:
      config.epsilon = value;
      break;
  }
  config.Validate();
  return config;
}

std::vector<SweepCell> RunSweep(SweepFactor factor, const SimConfig& config,
                                const std::vector<double>& values) {
  Require(!values.empty(), ErrorCode::kInvalidArgument,
          "sweep needs at least one factor value");
  std::vector<SimConfig> configs;
  for (double v : values) configs.push_back(WithFactor(config, factor, v));

  const auto reps = static_cast<std::size_t>(config.repetitions);
  std::vector<TrialResult> trials(values.size() * reps);
  ParallelFor(trials.size(), config.threads, [&](std::size_t k) {
    trials[k] = RunTrial(configs[k / reps], static_cast<int>(k % reps));
  });

  std::vector<SweepCell> cells;
  for (std::size_t c = 0; c < values.size(); ++c) {
    SweepCell cell;
    cell.factor = SweepFactorName(factor);
    cell.value = values[c];
    for (std::size_t r = 0; r < reps; ++r) {
      const TrialResult& t = trials[c * reps + r];
      PoolArm(cell.dp, t.dp, static_cast<int>(r));
      PoolArm(cell.nondp, t.nondp, static_cast<int>(r));
    }
    FinalizePool(cell.dp);
    FinalizePool(cell.nondp);
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::filesystem::path RawErrorsPath(const std::string& factor, double value,
                                    const std::string& arm) {
  return std::filesystem::path("raw") /
         (factor + "_" + FormatDouble(value) + "_" + arm + ".csv");
}

std::vector<ExperimentRecord> WriteSweepOutputs(
    const std::vector<SweepCell>& cells, const std::filesystem::path& out_dir,
    std::vector<std::filesystem::path>* written) {
  std::vector<ExperimentRecord> records;
  std::vector<std::vector<std::string>> summary_rows;
  for (const SweepCell& cell : cells) {
    for (const auto& [arm_name, pool] :
         {std::pair<std::string, const ArmPool*>{"dp", &cell.dp},
          std::pair<std::string, const ArmPool*>{"nondp", &cell.nondp}}) {
      ExperimentRecord record{cell.factor, cell.value, arm_name, pool->summary,
                              pool->failures,
                              RawErrorsPath(cell.factor, cell.value, arm_name)};

      std::vector<std::vector<std::string>> raw_rows;
      raw_rows.reserve(pool->errors.size());
      for (std::size_t i = 0; i < pool->errors.size(); ++i) {
        raw_rows.push_back({std::to_string(pool->repetition[i]),
                            FormatDouble(pool->errors[i])});
      }
      WriteCsv(out_dir / record.raw_errors_path, {"repetition", "error"},
               raw_rows);
      if (written) written->push_back(record.raw_errors_path);

      const double nan = std::numeric_limits<double>::quiet_NaN();
      const ErrorSummary s = pool->summary.value_or(
          ErrorSummary{nan, nan, nan, nan, 0, pool->excluded_near_zero});
      summary_rows.push_back({cell.factor, FormatDouble(cell.value), arm_name,
                              FormatDouble(s.median), FormatDouble(s.q1),
                              FormatDouble(s.q3), std::to_string(s.count),
                              std::to_string(pool->failures)});
      records.push_back(std::move(record));
    }
  }
  WriteCsv(out_dir / "summary.csv",
           {"factor", "value", "arm", "median", "q1", "q3", "count",
            "failures"},
           summary_rows);
  if (written) written->push_back("summary.csv");
  return records;
}

}  // namespace dplls
