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

#include "dplls/dp_solver.h"

#include <cmath>

#include "dplls/error.h"

namespace dplls {
namespace {

// Symmetric matrix in factored form, restricted to the kept eigenpairs.
struct Factored {
  Matrix vectors;
  Vector values;

  Matrix Assemble() const {
    return vectors * values.asDiagonal() * vectors.transpose();
  }
};

Factored Repair(const Matrix& hessian, const SolverOptions& options,
                bool* repaired) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hessian);
  Require(eig.info() == Eigen::Success, ErrorCode::kNumerical,
          "eigendecomposition of the objective Hessian failed");
  const Vector& lambda = eig.eigenvalues();  // ascending
  const double margin = options.concavity_margin;
  *repaired = lambda(lambda.size() - 1) > -margin;

  if (options.repair == RepairPolicy::kClampEigenvalues) {
    return {eig.eigenvectors(), lambda.cwiseMin(-margin)};
  }
  Eigen::Index keep = 0;
  while (keep < lambda.size() && lambda(keep) < -margin) ++keep;
  return {eig.eigenvectors().leftCols(keep), lambda.head(keep)};
}

// Minimum-norm solution of A x = b for symmetric negative semidefinite A.
Vector PseudoSolve(const Matrix& a, const Vector& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  const Vector& lambda = eig.eigenvalues();
  const double cutoff =
      std::max(lambda.cwiseAbs().maxCoeff(), 1.0) * 1e-14;
  Vector coeff = eig.eigenvectors().transpose() * b;
  for (Eigen::Index k = 0; k < coeff.size(); ++k) {
    coeff(k) = std::abs(lambda(k)) > cutoff ? coeff(k) / lambda(k) : 0.0;
  }
  return eig.eigenvectors() * coeff;
}

}  // namespace

QuadraticSolution SolveQuadratic(const TaylorWeights& weights,
                                 const SolverOptions& options) {
  const Matrix hessian = ObjectiveHessian(weights);
  const Vector linear = ObjectiveLinearTerm(weights);
  Require(hessian.allFinite() && std::isfinite(weights.wq),
          ErrorCode::kInvalidArgument, "objective weights must be finite");
  const Eigen::Index m = weights.p_size();

  QuadraticSolution out;
  const Factored h = Repair(hessian, options, &out.concavity_repaired);
  Require((h.values.array() < 0.0).all(), ErrorCode::kNumerical,
          "repaired Hessian is not negative definite on its range");

  // Stationary point of 1/2 v'Hv + g'v: v = -H^-1 g on the kept subspace.
  const Vector coeff =
      (h.vectors.transpose() * linear).cwiseQuotient(h.values);
  const Vector v = -(h.vectors * coeff);
  Require(v.allFinite(), ErrorCode::kNumerical,
          "quadratic maximizer is not finite");

  out.params.p = v.head(m);
  out.params.q = v(m);
  if (!(out.params.q >= options.q_min)) {
    // Maximize over p with q pinned: H_pp p = -H_pq q_min (g_p = 0).
    const Matrix repaired = h.Assemble();
    out.params.q = options.q_min;
    out.params.p = PseudoSolve(repaired.topLeftCorner(m, m),
                               -repaired.topRightCorner(m, 1) * options.q_min);
    out.q_clamped = true;
  }
  return out;
}

FitResult FitDp(const StandardizedDataset& data, const Family& family,
                const PrivacyBudget& budget, std::uint64_t seed,
                const SolverOptions& options) {
  const TaylorWeights noisy =
      PerturbWeights(ComputeTaylorWeights(family, data), family, budget, seed);
  const QuadraticSolution solution = SolveQuadratic(noisy, options);

  FitDiagnostics diagnostics;
  diagnostics.concavity_repaired = solution.concavity_repaired;
  diagnostics.q_clamped = solution.q_clamped;
  diagnostics.objective_value =
      ObjectiveValue(noisy, solution.params.p, solution.params.q);
  diagnostics.noise_seed = seed;
  return MakeFitResult(solution.params, diagnostics);
}

FitResult FitTruncated(const StandardizedDataset& data, const Family& family,
                       const SolverOptions& options) {
  const TaylorWeights weights = ComputeTaylorWeights(family, data);
  const QuadraticSolution solution = SolveQuadratic(weights, options);
  FitDiagnostics diagnostics;
  diagnostics.concavity_repaired = solution.concavity_repaired;
  diagnostics.q_clamped = solution.q_clamped;
  diagnostics.objective_value =
      ObjectiveValue(weights, solution.params.p, solution.params.q);
  return MakeFitResult(solution.params, diagnostics);
}

}  // namespace dplls
