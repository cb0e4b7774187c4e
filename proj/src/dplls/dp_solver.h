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

#ifndef DPLLS_DP_SOLVER_H_
#define DPLLS_DP_SOLVER_H_

#include <cstdint>

#include "dplls/fit_result.h"
#include "dplls/functional_mechanism.h"
#include "dplls/standardize.h"

namespace dplls {

// How a noisy quadratic that is not strictly concave is made solvable.
enum class RepairPolicy {
  // Clamp every eigenvalue of the Hessian to min(lambda, -delta).
  kClampEigenvalues,
  // Drop eigen-directions with lambda >= -delta; the solution has no
  // component along them.
  kSpectralTrim,
};

struct SolverOptions {
  RepairPolicy repair = RepairPolicy::kClampEigenvalues;
  double concavity_margin = 1e-8;  // delta
  double q_min = 1e-6;
};

struct QuadraticSolution {
  TransformedParams params;
  bool concavity_repaired = false;
  bool q_clamped = false;
};

// Maximizer of the (repaired) quadratic in v = (p, q). The constant w1 is
// ignored. When the unconstrained q falls below q_min the quadratic is
// re-maximized over p with q fixed at q_min.
QuadraticSolution SolveQuadratic(const TaylorWeights& weights,
                                 const SolverOptions& options = {});

// Private fit: weights -> Laplace perturbation -> repaired maximization ->
// sigma = 1/q, beta = p sigma. Repair only ever sees the already-noised
// weights. Deterministic in (data, family, epsilon, seed).
FitResult FitDp(const StandardizedDataset& data, const Family& family,
                const PrivacyBudget& budget, std::uint64_t seed,
                const SolverOptions& options = {});

// Maximizer of the noiseless truncated objective.
FitResult FitTruncated(const StandardizedDataset& data, const Family& family,
                       const SolverOptions& options = {});

}  // namespace dplls

#endif  // DPLLS_DP_SOLVER_H_
