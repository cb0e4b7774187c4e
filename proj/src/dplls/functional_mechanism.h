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

#ifndef DPLLS_FUNCTIONAL_MECHANISM_H_
#define DPLLS_FUNCTIONAL_MECHANISM_H_

#include <cstdint>
#include <random>

#include "dplls/standardize.h"
#include "dplls/types.h"

namespace dplls {

// The single generator type used for every random draw in the library.
using Rng = std::mt19937_64;

// Coefficients of the second-order polynomial in (p_0..p_d, q):
//
//   w1 + wq q + wq2 q^2 + sum_j wpq_j p_j q + sum_j wp2_j p_j^2
//      + sum_j sum_{h != j} wph(j, h) p_j p_h
//
// Index 0 of the p-indexed members is the intercept. `wph` keeps both ordered
// pairs (j, h) and (h, j); its diagonal is always zero.
struct TaylorWeights {
  double w1 = 0.0;
  double wq = 0.0;
  double wq2 = 0.0;
  Vector wpq;
  Vector wp2;
  Matrix wph;

  // d + 1
  Eigen::Index p_size() const { return wpq.size(); }

  // Number of scalar weights: 3 + 2(d+1) + (d+1)d.
  Eigen::Index weight_count() const {
    const Eigen::Index m = p_size();
    return 3 + 2 * m + m * (m - 1);
  }

  static TaylorWeights Zero(Eigen::Index p_size);
};

class PrivacyBudget {
 public:
  explicit PrivacyBudget(double epsilon);
  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
};

struct NoiseSpec {
  double delta = 0.0;  // global L1 sensitivity
  double scale = 0.0;  // delta / epsilon
  std::uint64_t seed = 0;

  static NoiseSpec For(const Family& family, Eigen::Index d,
                       const PrivacyBudget& budget, std::uint64_t seed);
};

TaylorWeights TaylorWeightsSev(const StandardizedDataset& data);
TaylorWeights TaylorWeightsLogistic(const StandardizedDataset& data);
TaylorWeights ComputeTaylorWeights(const Family& family,
                                   const StandardizedDataset& data);

// Upper bound on the L1 change of all weights between neighbouring
// standardized datasets: 4 + 4 sqrt(d) + d (SEV), 2 + 2 sqrt(d) + d/2
// (logistic).
double Sensitivity(const Family& family, Eigen::Index d);

// Sum of absolute differences over every weight, in the draw order below.
double WeightL1Distance(const TaylorWeights& a, const TaylorWeights& b);

// Brute-force check of the sensitivity bound: builds random neighbouring
// standardized datasets (features in [0, 1/sqrt(d)], y in [-1, 1], extremes
// favoured) and returns the largest WeightL1Distance seen.
double EmpiricalSensitivity(const Family& family, Eigen::Index n,
                            Eigen::Index d, int trials, std::uint64_t seed);

// Uniform draw on the open interval (0, 1).
double UniformOpen(Rng& rng);

// Laplace(0, scale) quantile at u - 1/2, u in (0, 1).
double LaplaceInverseCdf(double centered_u, double scale);

double LaplaceSample(double scale, Rng& rng);

// Adds an independent Laplace(delta/epsilon) draw to every weight. Draw order:
// w1, wq, wq2, wpq (ascending j), wp2 (ascending j), wph row-major skipping
// the diagonal. The same (seed, epsilon, d, family) gives the same output.
TaylorWeights PerturbWeights(const TaylorWeights& weights, const Family& family,
                             const PrivacyBudget& budget, std::uint64_t seed);
TaylorWeights PerturbWeights(const TaylorWeights& weights, double scale,
                             Rng& rng);

// The quadratic, its gradient in (p, q) and its constant Hessian. The
// objective is 1/2 v'Hv + g'v + w1 with v = (p, q) and g = (0, .., 0, wq).
double ObjectiveValue(const TaylorWeights& w, const Vector& p, double q);
Vector ObjectiveGradient(const TaylorWeights& w, const Vector& p, double q);
Matrix ObjectiveHessian(const TaylorWeights& w);
Vector ObjectiveLinearTerm(const TaylorWeights& w);

// log of the density ratio P(observed | D) / P(observed | D') under the
// Laplace perturbation. Bounded by epsilon whenever D and D' are neighbours.
double PrivacyLogRatio(const TaylorWeights& w_d, const TaylorWeights& w_d_prime,
                       const TaylorWeights& observed, const Family& family,
                       const PrivacyBudget& budget);

// Largest PrivacyLogRatio over `pairs` random neighbouring datasets (drawn as
// in EmpiricalSensitivity) and `observed_per_pair` mechanism outputs each,
// half released from D and half from D'.
double MaxPrivacyLogRatio(const Family& family, Eigen::Index n, Eigen::Index d,
                          const PrivacyBudget& budget, int pairs,
                          int observed_per_pair, std::uint64_t seed);

}  // namespace dplls

#endif  // DPLLS_FUNCTIONAL_MECHANISM_H_
