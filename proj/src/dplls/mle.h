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

#ifndef DPLLS_MLE_H_
#define DPLLS_MLE_H_

#include "dplls/fit_result.h"
#include "dplls/standardize.h"

namespace dplls {

struct MleOptions {
  int max_iterations = 200;
  // Applied to the gradient divided by max(n, 1), so the stopping point
  // does not depend on how many rows are summed.
  double gradient_tolerance = 1e-8;
  // q outside [q_floor, q_ceiling] means the likelihood has no interior
  // maximizer (perfect fit or vanishing precision).
  double q_floor = 1e-10;
  double q_ceiling = 1e10;
};

// Non-private benchmark: damped Newton with backtracking on the exact
// transformed log-likelihood, started at the expansion point p = 0, q = 1.
// Throws NotConvergedError when the iteration cap is hit and
// Error(kDegenerateFit) when n <= d + 2 or q runs off to 0 or infinity.
FitResult FitMle(const StandardizedDataset& data, const Family& family,
                 const MleOptions& options = {});

}  // namespace dplls

#endif  // DPLLS_MLE_H_
