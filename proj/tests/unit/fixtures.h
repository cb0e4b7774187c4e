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

#ifndef DPLLS_TESTS_UNIT_FIXTURES_H_
#define DPLLS_TESTS_UNIT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "dplls/standardize.h"
#include "dplls/types.h"
#include "unit/oracles.h"

namespace dplls::testing {

// Wraps already-scaled data with an identity-like spec.
inline StandardizedDataset Scaled(Matrix x, Vector y,
                                  Family family = Family::Sev()) {
  ScalingSpec spec;
  spec.alpha = Vector::Zero(x.cols());
  spec.beta_max = Vector::Ones(x.cols());
  spec.y_lo = -1.0;
  spec.y_hi = 1.0;
  return StandardizedDataset(std::move(x), std::move(y), std::move(spec),
                             family);
}

// Random standardized data: x in [0, 1/sqrt(d)], y in [-1, 1].
inline StandardizedDataset RandomScaled(Eigen::Index n, Eigen::Index d,
                                        std::uint64_t seed,
                                        Family family = Family::Sev()) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(d));
  return Scaled(oracle::Uniform(n, d, 0.0, bound, seed),
                oracle::Uniform(n, 1, -1.0, 1.0, seed + 7919).col(0), family);
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("dplls_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace dplls::testing

#endif  // DPLLS_TESTS_UNIT_FIXTURES_H_
