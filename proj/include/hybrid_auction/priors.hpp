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

// Beliefs over a click-through rate: a point mass (a certain advertiser) or a
// Beta law (Bernoulli observations with a conjugate prior).

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>

#include "hybrid_auction/quadrature.hpp"

namespace hybrid {

using Rng = std::mt19937_64;

class BetaParams {
 public:
  BetaParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
      std::ostringstream msg;
      msg << "Beta positivity invariant violated: alpha and beta must be finite and > 0"
          << " (alpha=" << alpha << ", beta=" << beta << ")";
      throw std::invalid_argument(msg.str());
    }
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double mean() const noexcept { return alpha_ / (alpha_ + beta_); }

  friend bool operator==(const BetaParams&, const BetaParams&) = default;

 private:
  double alpha_;
  double beta_;
};

struct PointMass {
  double p;
  friend bool operator==(const PointMass&, const PointMass&) = default;
};

/// CTR belief. Immutable; `update` returns a new value.
class Prior {
 public:
  static Prior point(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      std::ostringstream msg;
      msg << "point prior must lie in [0, 1] (p=" << p << ")";
      throw std::invalid_argument(msg.str());
    }
    return Prior(PointMass{p});
  }
  static Prior beta(double alpha, double beta) { return Prior(BetaParams(alpha, beta)); }

  Prior(const BetaParams& params) : rep_(params) {}  // NOLINT(google-explicit-constructor)

  bool is_point() const noexcept { return std::holds_alternative<PointMass>(rep_); }
  bool is_beta() const noexcept { return std::holds_alternative<BetaParams>(rep_); }

  /// Throws std::bad_variant_access on a mismatched alternative.
  const BetaParams& beta_params() const { return std::get<BetaParams>(rep_); }
  double point_value() const { return std::get<PointMass>(rep_).p; }

  const std::variant<PointMass, BetaParams>& rep() const noexcept { return rep_; }

  friend bool operator==(const Prior&, const Prior&) = default;

 private:
  explicit Prior(PointMass pm) : rep_(pm) {}
  std::variant<PointMass, BetaParams> rep_;
};

inline double mean(const Prior& prior) {
  if (prior.is_point()) return prior.point_value();
  return prior.beta_params().mean();
}

inline double variance(const Prior& prior) {
  if (prior.is_point()) return 0.0;
  const auto& b = prior.beta_params();
  const double s = b.alpha() + b.beta();
  return b.alpha() * b.beta() / (s * s * (s + 1.0));
}

/// Conjugate update after `clicks` clicks in `impressions` impressions.
/// Point priors are absorbing.
inline Prior update(const Prior& prior, std::uint64_t clicks, std::uint64_t impressions) {
  if (clicks > impressions) {
    std::ostringstream msg;
    msg << "invalid observation: clicks (" << clicks << ") exceed impressions (" << impressions
        << ")";
    throw std::invalid_argument(msg.str());
  }
  if (prior.is_point()) return prior;
  const auto& b = prior.beta_params();
  return Prior::beta(b.alpha() + static_cast<double>(clicks),
                     b.beta() + static_cast<double>(impressions - clicks));
}

/// Beta density evaluated through log-gamma so that large parameters do not
/// overflow the normalizing constant.
inline double density(const BetaParams& params, double x) {
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  const double a = params.alpha();
  const double b = params.beta();
  const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  return std::exp(log_norm + (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x));
}

inline double sample(const Prior& prior, Rng& rng) {
  if (prior.is_point()) return prior.point_value();
  const auto& b = prior.beta_params();
  std::gamma_distribution<double> ga(b.alpha(), 1.0);
  std::gamma_distribution<double> gb(b.beta(), 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  const double s = x + y;
  if (s <= 0.0) return b.mean();  // both draws underflowed
  return x / s;
}

/// Quadrature rule representing the prior: a single node for a point mass,
/// an n-node Gauss-Jacobi rule for a Beta law.
inline QuadratureRule quadrature_rule(const Prior& prior, int nodes = 128) {
  if (prior.is_point()) return QuadratureRule{{prior.point_value()}, {1.0}};
  const auto& b = prior.beta_params();
  // Posteriors recur across rounds and trials; the eigen solve dominates.
  thread_local std::map<std::tuple<double, double, int>, QuadratureRule> cache;
  const auto key = std::make_tuple(b.alpha(), b.beta(), nodes);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (cache.size() >= 4096) cache.clear();
  return cache.emplace(key, gauss_jacobi_beta(b.alpha(), b.beta(), nodes)).first->second;
}

inline std::string to_string(const Prior& prior) {
  std::ostringstream out;
  out.precision(17);
  if (prior.is_point()) {
    out << "point:" << prior.point_value();
  } else {
    out << "beta:" << prior.beta_params().alpha() << ',' << prior.beta_params().beta();
  }
  return out.str();
}

}  // namespace hybrid
