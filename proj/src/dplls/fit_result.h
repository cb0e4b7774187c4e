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

#ifndef DPLLS_FIT_RESULT_H_
#define DPLLS_FIT_RESULT_H_

#include <cstdint>
#include <optional>

#include "dplls/types.h"

namespace dplls {

struct FitDiagnostics {
  bool concavity_repaired = false;
  bool q_clamped = false;
  double objective_value = 0.0;
  // Present only for private fits.
  std::optional<std::uint64_t> noise_seed;
  // Newton iterations (exact MLE only) and the final gradient infinity norm.
  int iterations = 0;
  double gradient_norm = 0.0;
};

// Parameters on the standardized scale plus how they were obtained.
struct FitResult {
  ModelParams params;
  TransformedParams transformed;
  FitDiagnostics diagnostics;
};

// sigma = 1/q, beta_j = p_j sigma.
inline FitResult MakeFitResult(const TransformedParams& transformed,
                               const FitDiagnostics& diagnostics) {
  return {ToModel(transformed), transformed, diagnostics};
}

}  // namespace dplls

#endif  // DPLLS_FIT_RESULT_H_
