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

#include "dplls/mle.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "dplls/error.h"
#include "dplls/loglik.h"

namespace dplls {
namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 60;

// Newton direction for the concave objective: solves (-H) step = grad on the
// range of -H. Zero-curvature directions (constant predictors) get no step.
Vector NewtonStep(const Matrix& hessian, const Vector& grad) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(-hessian);
  const Vector& lambda = eig.eigenvalues();
  const double cutoff =
      std::max(lambda.cwiseAbs().maxCoeff(), 1.0) * 1e-13;
  Vector coeff = eig.eigenvectors().transpose() * grad;
  for (Eigen::Index k = 0; k < coeff.size(); ++k) {
    coeff(k) = lambda(k) > cutoff ? coeff(k) / lambda(k) : 0.0;
  }
  return eig.eigenvectors() * coeff;
}

TransformedParams Advance(const TransformedParams& at, const Vector& step,
                          double t) {
  const Eigen::Index dp = at.p.size();
  return {at.p + t * step.head(dp), at.q + t * step(dp)};
}

}  // namespace

FitResult FitMle(const StandardizedDataset& data, const Family& family,
                 const MleOptions& options) {
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.features();
  if (n <= d + 2) {
    Fail(ErrorCode::kDegenerateFit,
         "exact MLE needs n > d + 2 (n = " + std::to_string(n) +
             ", d = " + std::to_string(d) + ")");
  }

  TransformedParams current{Vector::Zero(d + 1), 1.0};
  double value = LogLik(family, current, data);
  Vector grad = LogLikGradient(family, current, data);
  const double tolerance =
      options.gradient_tolerance * std::max(static_cast<double>(n), 1.0);
  int iteration = 0;

  for (; iteration < options.max_iterations; ++iteration) {
    if (grad.lpNorm<Eigen::Infinity>() <= tolerance) break;

    const Vector step = NewtonStep(LogLikHessian(family, current, data), grad);
    const double slope = grad.dot(step);
    if (!(slope > 0.0)) break;  // no ascent direction left

    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h < kMaxHalvings; ++h, t *= 0.5) {
      const TransformedParams trial = Advance(current, step, t);
      if (!(trial.q > 0.0)) continue;
      const double trial_value = LogLik(family, trial, data);
      if (std::isfinite(trial_value) &&
          trial_value >= value + kArmijo * t * slope) {
        current = trial;
        value = trial_value;
        accepted = true;
        break;
      }
    }
    grad = LogLikGradient(family, current, data);
    if (!accepted) break;  // rounding floor reached

    if (current.q < options.q_floor || current.q > options.q_ceiling) {
      Fail(ErrorCode::kDegenerateFit,
           "exact MLE diverged: q = " + std::to_string(current.q) +
               " (data admit no finite positive scale estimate)");
    }
  }

  const double grad_norm = grad.lpNorm<Eigen::Infinity>();
  if (!(grad_norm <= tolerance)) {
    throw NotConvergedError(
        "exact MLE did not converge after " + std::to_string(iteration) +
            " iterations (gradient norm " + std::to_string(grad_norm) + ")",
        iteration, grad_norm);
  }

  FitDiagnostics diagnostics;
  diagnostics.objective_value = value;
  diagnostics.iterations = iteration;
  diagnostics.gradient_norm = grad_norm;
  return MakeFitResult(current, diagnostics);
}

}  // namespace dplls
