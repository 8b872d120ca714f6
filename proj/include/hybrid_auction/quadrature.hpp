// Copyright 2026 The Hybrid Auction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hybrid {

/// A discrete probability measure used to approximate expectations:
/// E[f(X)] ~= sum_i weights[i] * f(nodes[i]). Weights sum to one.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <typename F>
  double expect(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Jacobi rule for the Beta(alpha, beta) law on [0, 1], built with the
/// Golub-Welsch eigenvalue method. Exact for polynomials of degree < 2n
/// integrated against the Beta density, including alpha < 1 or beta < 1
/// where the density is unbounded at an endpoint.
inline QuadratureRule gauss_jacobi_beta(double alpha, double beta, int n) {
  if (n < 1) throw std::invalid_argument("quadrature node count must be positive");
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("Gauss-Jacobi rule requires alpha > 0 and beta > 0");

  // Jacobi weight (1 - t)^a (1 + t)^b on [-1, 1], with x = (1 + t) / 2.
  const double a = beta - 1.0;
  const double b = alpha - 1.0;
  const double ab = a + b;

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  diag(0) = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    double bk;
    if (k == 1) {
      bk = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * k + ab;
      bk = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(bk);
  }

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.5 * (1.0 + diag(0));
    rule.weights[0] = 1.0;
    return rule;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("Gauss-Jacobi eigenvalue solve did not converge");

  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = std::clamp(0.5 * (1.0 + values(i)), 0.0, 1.0);
    rule.weights[i] = vectors(0, i) * vectors(0, i);
    total += rule.weights[i];
  }
  for (auto& w : rule.weights) w /= total;
  return rule;
}

/// Adaptive Gauss-Kronrod integration of a smooth integrand on [lo, hi].
template <typename F>
double integrate_adaptive(F&& f, double lo, double hi, double tolerance = 1e-13,
                          unsigned max_depth = 20) {
  if (hi <= lo) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(std::forward<F>(f), lo,
                                                                       hi, max_depth, tolerance);
}

}  // namespace hybrid
