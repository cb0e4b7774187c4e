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

#include "dplls/functional_mechanism.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "dplls/error.h"

namespace dplls {
namespace {

// Shared shape of both expansions: coefficients differ only by the factor
// `cross` on the data-dependent second-order terms.
TaylorWeights Expand(const StandardizedDataset& data, double w1, double cross) {
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.features();
  Matrix xa(n, d + 1);
  xa.col(0).setOnes();
  xa.rightCols(d) = data.x();

  Matrix gram = Matrix::Zero(d + 1, d + 1);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(xa.transpose());
  gram = gram.selfadjointView<Eigen::Lower>();
  const Vector& y = data.y();
  const double nn = static_cast<double>(n);

  TaylorWeights w;
  w.w1 = w1;
  w.wq = 2.0 * nn;
  w.wq2 = -(0.5 * nn + 0.5 * cross * y.squaredNorm());
  w.wpq = cross * (xa.transpose() * y);
  w.wp2 = -0.5 * cross * gram.diagonal();
  w.wph = -0.5 * cross * gram;
  w.wph.diagonal().setZero();
  return w;
}

// Coordinate of a random row for the sensitivity search. Thirds: lower bound,
// upper bound, uniform interior.
double BoundedCoordinate(double lo, double hi, Rng& rng) {
  const double r = UniformOpen(rng);
  if (r < 1.0 / 3.0) return lo;
  if (r < 2.0 / 3.0) return hi;
  return lo + (hi - lo) * UniformOpen(rng);
}

void FillRandomRow(Matrix& x, Vector& y, Eigen::Index i, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(x.cols()));
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    x(i, j) = BoundedCoordinate(0.0, bound, rng);
  }
  y(i) = BoundedCoordinate(-1.0, 1.0, rng);
}

StandardizedDataset PreScaled(Matrix x, Vector y, const Family& family) {
  ScalingSpec spec;
  spec.alpha = Vector::Zero(x.cols());
  spec.beta_max = Vector::Ones(x.cols());
  spec.y_lo = -1.0;
  spec.y_hi = 1.0;
  return StandardizedDataset(std::move(x), std::move(y), std::move(spec),
                             family);
}

template <typename Fn>
void ForEachWeight(const TaylorWeights& a, const TaylorWeights& b, Fn&& fn) {
  fn(a.w1, b.w1);
  fn(a.wq, b.wq);
  fn(a.wq2, b.wq2);
  for (Eigen::Index j = 0; j < a.p_size(); ++j) fn(a.wpq(j), b.wpq(j));
  for (Eigen::Index j = 0; j < a.p_size(); ++j) fn(a.wp2(j), b.wp2(j));
  for (Eigen::Index j = 0; j < a.p_size(); ++j) {
    for (Eigen::Index h = 0; h < a.p_size(); ++h) {
      if (h != j) fn(a.wph(j, h), b.wph(j, h));
    }
  }
}

void CheckSameShape(const TaylorWeights& a, const TaylorWeights& b) {
  Require(a.p_size() == b.p_size() && a.wp2.size() == b.wp2.size() &&
              a.wph.rows() == b.wph.rows() && a.wph.cols() == b.wph.cols(),
          ErrorCode::kShapeMismatch, "weight vectors have different dimensions");
}

}  // namespace

TaylorWeights TaylorWeights::Zero(Eigen::Index p_size) {
  TaylorWeights w;
  w.wpq = Vector::Zero(p_size);
  w.wp2 = Vector::Zero(p_size);
  w.wph = Matrix::Zero(p_size, p_size);
  return w;
}

PrivacyBudget::PrivacyBudget(double epsilon) : epsilon_(epsilon) {
  Require(std::isfinite(epsilon) && epsilon > 0.0,
          ErrorCode::kInvalidArgument,
          "privacy budget epsilon must be finite and > 0");
}

NoiseSpec NoiseSpec::For(const Family& family, Eigen::Index d,
                         const PrivacyBudget& budget, std::uint64_t seed) {
  const double delta = Sensitivity(family, d);
  return {delta, delta / budget.epsilon(), seed};
}

TaylorWeights TaylorWeightsSev(const StandardizedDataset& data) {
  const double n = static_cast<double>(data.rows());
  return Expand(data, -2.5 * n, 1.0);
}

TaylorWeights TaylorWeightsLogistic(const StandardizedDataset& data) {
  const double n = static_cast<double>(data.rows());
  return Expand(data, -n * (1.5 + 2.0 * std::numbers::ln2), 0.5);
}

TaylorWeights ComputeTaylorWeights(const Family& family,
                                   const StandardizedDataset& data) {
  return family.tag == FamilyTag::kSev ? TaylorWeightsSev(data)
                                       : TaylorWeightsLogistic(data);
}

double Sensitivity(const Family& family, Eigen::Index d) {
  Require(d >= 1, ErrorCode::kInvalidArgument,
          "sensitivity needs d >= 1, got " + std::to_string(d));
  const double dd = static_cast<double>(d);
  const double root = std::sqrt(dd);
  return family.tag == FamilyTag::kSev ? 4.0 + 4.0 * root + dd
                                       : 2.0 + 2.0 * root + 0.5 * dd;
}

double WeightL1Distance(const TaylorWeights& a, const TaylorWeights& b) {
  CheckSameShape(a, b);
  double total = 0.0;
  ForEachWeight(a, b, [&](double u, double v) { total += std::abs(u - v); });
  return total;
}

double EmpiricalSensitivity(const Family& family, Eigen::Index n,
                            Eigen::Index d, int trials, std::uint64_t seed) {
  Require(trials >= 1, ErrorCode::kInvalidArgument, "trials must be >= 1");
  Require(n >= 1 && d >= 1, ErrorCode::kInvalidArgument,
          "empirical sensitivity needs n >= 1 and d >= 1");
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Matrix x(n, d);
    Vector y(n);
    for (Eigen::Index i = 0; i < n; ++i) FillRandomRow(x, y, i, rng);
    Matrix x_neighbor = x;
    Vector y_neighbor = y;
    FillRandomRow(x_neighbor, y_neighbor, n - 1, rng);

    const TaylorWeights w =
        ComputeTaylorWeights(family, PreScaled(std::move(x), std::move(y), family));
    const TaylorWeights w_neighbor = ComputeTaylorWeights(
        family,
        PreScaled(std::move(x_neighbor), std::move(y_neighbor), family));
    worst = std::max(worst, WeightL1Distance(w, w_neighbor));
  }
  return worst;
}

double UniformOpen(Rng& rng) {
  // 53 random mantissa bits, shifted half a step off both endpoints.
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double LaplaceInverseCdf(double centered_u, double scale) {
  if (centered_u == 0.0) return 0.0;
  const double sign = centered_u > 0.0 ? 1.0 : -1.0;
  return -scale * sign * std::log1p(-2.0 * std::abs(centered_u));
}

double LaplaceSample(double scale, Rng& rng) {
  return LaplaceInverseCdf(UniformOpen(rng) - 0.5, scale);
}

TaylorWeights PerturbWeights(const TaylorWeights& weights, double scale,
                             Rng& rng) {
  Require(scale > 0.0 && std::isfinite(scale), ErrorCode::kInvalidArgument,
          "Laplace scale must be finite and > 0");
  TaylorWeights out = weights;
  out.w1 += LaplaceSample(scale, rng);
  out.wq += LaplaceSample(scale, rng);
  out.wq2 += LaplaceSample(scale, rng);
  const Eigen::Index m = weights.p_size();
  for (Eigen::Index j = 0; j < m; ++j) out.wpq(j) += LaplaceSample(scale, rng);
  for (Eigen::Index j = 0; j < m; ++j) out.wp2(j) += LaplaceSample(scale, rng);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index h = 0; h < m; ++h) {
      if (h != j) out.wph(j, h) += LaplaceSample(scale, rng);
    }
  }
  return out;
}

TaylorWeights PerturbWeights(const TaylorWeights& weights, const Family& family,
                             const PrivacyBudget& budget, std::uint64_t seed) {
  const NoiseSpec noise =
      NoiseSpec::For(family, weights.p_size() - 1, budget, seed);
  Rng rng(noise.seed);
  return PerturbWeights(weights, noise.scale, rng);
}

double ObjectiveValue(const TaylorWeights& w, const Vector& p, double q) {
  Require(p.size() == w.p_size(), ErrorCode::kShapeMismatch,
          "p has the wrong dimension for these weights");
  return w.w1 + w.wq * q + w.wq2 * q * q + q * w.wpq.dot(p) +
         w.wp2.dot(p.cwiseAbs2()) + p.dot(w.wph * p);
}

Vector ObjectiveGradient(const TaylorWeights& w, const Vector& p, double q) {
  Require(p.size() == w.p_size(), ErrorCode::kShapeMismatch,
          "p has the wrong dimension for these weights");
  const Eigen::Index m = w.p_size();
  Vector grad(m + 1);
  grad.head(m) = q * w.wpq + 2.0 * w.wp2.cwiseProduct(p) +
                 (w.wph + w.wph.transpose()) * p;
  grad(m) = w.wq + 2.0 * w.wq2 * q + w.wpq.dot(p);
  return grad;
}

Matrix ObjectiveHessian(const TaylorWeights& w) {
  const Eigen::Index m = w.p_size();
  Matrix h(m + 1, m + 1);
  h.topLeftCorner(m, m) = w.wph + w.wph.transpose();
  h.topLeftCorner(m, m).diagonal() = 2.0 * w.wp2;
  h.topRightCorner(m, 1) = w.wpq;
  h.bottomLeftCorner(1, m) = w.wpq.transpose();
  h(m, m) = 2.0 * w.wq2;
  return h;
}

Vector ObjectiveLinearTerm(const TaylorWeights& w) {
  Vector g = Vector::Zero(w.p_size() + 1);
  g(w.p_size()) = w.wq;
  return g;
}

double PrivacyLogRatio(const TaylorWeights& w_d, const TaylorWeights& w_d_prime,
                       const TaylorWeights& observed, const Family& family,
                       const PrivacyBudget& budget) {
  CheckSameShape(w_d, w_d_prime);
  CheckSameShape(w_d, observed);
  const double delta = Sensitivity(family, w_d.p_size() - 1);
  // log pdf(obs - w_d) - log pdf(obs - w_d') summed over weights.
  const double far = WeightL1Distance(observed, w_d_prime);
  const double near = WeightL1Distance(observed, w_d);
  return budget.epsilon() / delta * (far - near);
}

double MaxPrivacyLogRatio(const Family& family, Eigen::Index n, Eigen::Index d,
                          const PrivacyBudget& budget, int pairs,
                          int observed_per_pair, std::uint64_t seed) {
  Require(pairs >= 1 && observed_per_pair >= 1, ErrorCode::kInvalidArgument,
          "privacy ratio sweep needs pairs >= 1 and observations >= 1");
  Require(n >= 1 && d >= 1, ErrorCode::kInvalidArgument,
          "privacy ratio sweep needs n >= 1 and d >= 1");
  Rng rng(seed);
  const double scale = Sensitivity(family, d) / budget.epsilon();
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < pairs; ++t) {
    Matrix x(n, d);
    Vector y(n);
    for (Eigen::Index i = 0; i < n; ++i) FillRandomRow(x, y, i, rng);
    Matrix x_neighbor = x;
    Vector y_neighbor = y;
    FillRandomRow(x_neighbor, y_neighbor, n - 1, rng);

    const TaylorWeights w =
        ComputeTaylorWeights(family, PreScaled(std::move(x), std::move(y), family));
    const TaylorWeights w_neighbor = ComputeTaylorWeights(
        family,
        PreScaled(std::move(x_neighbor), std::move(y_neighbor), family));
    for (int o = 0; o < observed_per_pair; ++o) {
      const TaylorWeights observed =
          PerturbWeights(o % 2 == 0 ? w : w_neighbor, scale, rng);
      worst = std::max(
          worst, PrivacyLogRatio(w, w_neighbor, observed, family, budget));
    }
  }
  return worst;
}

}  // namespace dplls
