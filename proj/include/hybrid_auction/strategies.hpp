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

// Bidding strategies for the hybrid auction.

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <type_traits>
#include <variant>

#include "hybrid_auction/auction.hpp"
#include "hybrid_auction/indices.hpp"
#include "hybrid_auction/priors.hpp"

namespace hybrid {

struct RiskNeutral {};
/// U(x) = 1 - exp(-lambda x): concave.
struct ExponentialAverse {
  double lambda;
};
/// U(x) = exp(lambda x) - 1: convex.
struct ExponentialSeeking {
  double lambda;
};
using UtilitySpec = std::variant<RiskNeutral, ExponentialAverse, ExponentialSeeking>;

inline void validate(const UtilitySpec& u) {
  std::visit(
      [](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (!std::is_same_v<T, RiskNeutral>) {
          if (!(spec.lambda > 0.0) || !std::isfinite(spec.lambda))
            throw std::invalid_argument("utility risk parameter lambda must be positive");
        }
      },
      u);
}

inline double utility(const UtilitySpec& u, double x) {
  struct Eval {
    double x;
    double operator()(const RiskNeutral&) const { return x; }
    double operator()(const ExponentialAverse& s) const { return -std::expm1(-s.lambda * x); }
    double operator()(const ExponentialSeeking& s) const { return std::expm1(s.lambda * x); }
  };
  return std::visit(Eval{x}, u);
}

inline std::string_view utility_name(const UtilitySpec& u) {
  struct Name {
    std::string_view operator()(const RiskNeutral&) const { return "neutral"; }
    std::string_view operator()(const ExponentialAverse&) const { return "averse"; }
    std::string_view operator()(const ExponentialSeeking&) const { return "seeking"; }
  };
  return std::visit(Name{}, u);
}

/// Myopic risk-neutral dominant bid (v p, v).
inline Bid truthful_bid(double v, double p) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw std::invalid_argument("per-click value must be finite and non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("CTR must lie in [0, 1]");
  return {v * p, v};
}

/// E[U(v P - y)] under the quadrature rule representing P.
inline double expected_utility(const QuadratureRule& rule, const UtilitySpec& u, double v,
                               double y) {
  return rule.expect([&](double ctr) { return utility(u, v * ctr - y); });
}

struct RiskBidOptions {
  double tolerance = 1e-10;
  int nodes = 128;
};

/// Bid (m*, v) with m* = max{ y : E[U(v P - y)] >= 0 }. E[U(vP - y)] is
/// strictly decreasing in y and m* lies in [0, v].
inline Bid risk_bid(double v, const Prior& prior, const UtilitySpec& u,
                    const RiskBidOptions& opts = {}) {
  validate(u);
  if (!(v >= 0.0) || !std::isfinite(v))
    throw std::invalid_argument("per-click value must be finite and non-negative");
  if (!(opts.tolerance > 0.0)) throw std::invalid_argument("risk bid tolerance must be positive");
  if (v == 0.0) return {0.0, 0.0};
  const QuadratureRule rule = quadrature_rule(prior, opts.nodes);
  const double m_star = detail::bisect_largest(
      [&](double y) { return expected_utility(rule, u, v, y) >= 0.0; }, 0.0, v, opts.tolerance);
  return {m_star, v};
}

/// Expected utilities of winning at opposing effective bid R through the
/// per-impression route (X = vP - R) and the per-click route (Y = vP - R P / p),
/// with p = E[P] and a myopic auctioneer (q = p).
struct PricingUtilities {
  double per_impression;  ///< E[U(X)]
  double per_click;       ///< E[U(Y)]
};

inline PricingUtilities pricing_utilities(const QuadratureRule& rule, double p,
                                          const UtilitySpec& u, double v, double opposing_bid) {
  if (!(p > 0.0)) throw std::domain_error("per-click route undefined for zero mean CTR");
  const double impression = rule.expect([&](double x) { return utility(u, v * x - opposing_bid); });
  const double click =
      rule.expect([&](double x) { return utility(u, v * x - opposing_bid * x / p); });
  return {impression, click};
}

inline PricingUtilities pricing_utilities(const Prior& prior, const UtilitySpec& u, double v,
                                          double opposing_bid, int nodes = 128) {
  return pricing_utilities(quadrature_rule(prior, nodes), mean(prior), u, v, opposing_bid);
}

// Strategy descriptors, as named in scenario files.
struct TruthfulStrategy {};
struct RiskStrategy {
  UtilitySpec utility;
};
struct BiddingIndexStrategy {};
struct ExploreStrategy {
  double epsilon;
};
using StrategySpec = std::variant<TruthfulStrategy, RiskStrategy, BiddingIndexStrategy, ExploreStrategy>;

inline std::string_view strategy_name(const StrategySpec& s) {
  struct Name {
    std::string_view operator()(const TruthfulStrategy&) const { return "truthful"; }
    std::string_view operator()(const RiskStrategy&) const { return "risk"; }
    std::string_view operator()(const BiddingIndexStrategy&) const { return "bidding_index"; }
    std::string_view operator()(const ExploreStrategy&) const { return "explore"; }
  };
  return std::visit(Name{}, s);
}

struct AdvertiserState {
  double valuation = 0.0;           ///< v: true per-click value
  std::optional<double> true_ctr;   ///< present for certain advertisers
  Prior advertiser_prior = Prior::beta(1.0, 1.0);       ///< P
  Prior auctioneer_prior_view = Prior::beta(1.0, 1.0);  ///< mirrored Q
  StrategySpec strategy = TruthfulStrategy{};
};

/// Checks the cross-field invariants of an advertiser description.
inline void validate(const AdvertiserState& s) {
  if (!(s.valuation >= 0.0) || !std::isfinite(s.valuation))
    throw std::invalid_argument("advertiser valuation must be finite and non-negative");
  if (s.true_ctr && !(*s.true_ctr >= 0.0 && *s.true_ctr <= 1.0))
    throw std::invalid_argument("true_ctr must lie in [0, 1]");
  if (const auto* e = std::get_if<ExploreStrategy>(&s.strategy)) {
    if (!(e->epsilon > 0.0 && e->epsilon < 1.0))
      throw std::invalid_argument("explore epsilon must lie in (0, 1)");
    if (!s.true_ctr) throw std::invalid_argument("explore strategy requires true_ctr");
  }
  if (s.true_ctr && (std::holds_alternative<ExploreStrategy>(s.strategy) ||
                     std::holds_alternative<BiddingIndexStrategy>(s.strategy))) {
    if (s.advertiser_prior != Prior::point(*s.true_ctr))
      throw std::invalid_argument(
          "well-informed advertiser must hold the point prior at its true_ctr");
  }
  if (const auto* r = std::get_if<RiskStrategy>(&s.strategy)) validate(r->utility);
}

/// Bidding-index strategy: (B, B / p) with p = mean(P).
inline Bid bidding_index_bid(const AdvertiserState& state, DiscountFactor gamma_b,
                             const AuctioneerIndexFn& index_fn, const IndexOptions& opts = {}) {
  const double p = mean(state.advertiser_prior);
  if (!(p > 0.0))
    throw std::domain_error("bidding-index bid undefined for a zero advertiser CTR estimate");
  const auto result =
      bidding_index(state.valuation, {state.advertiser_prior, state.auctioneer_prior_view},
                    gamma_b, index_fn, opts);
  return {result.bid_index, result.bid_index / p};
}

enum class ExplorePhase { Explore, Exploit };

/// Certain advertiser's two-phase exploration. While the auctioneer's
/// posterior mean is below p (1 - eps) bid (v p (1 - eps), v); afterwards bid
/// (0, v) forever.
class Explorer {
 public:
  Explorer(double valuation, double true_ctr, double epsilon)
      : valuation_(valuation), true_ctr_(true_ctr), epsilon_(epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
      throw std::invalid_argument("explore epsilon must lie in (0, 1)");
    if (!(true_ctr >= 0.0 && true_ctr <= 1.0))
      throw std::invalid_argument("true_ctr must lie in [0, 1]");
    if (!(valuation >= 0.0)) throw std::invalid_argument("valuation must be non-negative");
  }

  double target() const noexcept { return true_ctr_ * (1.0 - epsilon_); }
  ExplorePhase phase() const noexcept { return phase_; }

  Bid bid(const Prior& auctioneer_posterior) {
    if (phase_ == ExplorePhase::Explore && !(mean(auctioneer_posterior) < target()))
      phase_ = ExplorePhase::Exploit;
    if (phase_ == ExplorePhase::Explore) return {valuation_ * target(), valuation_};
    return {0.0, valuation_};
  }

 private:
  double valuation_;
  double true_ctr_;
  double epsilon_;
  ExplorePhase phase_ = ExplorePhase::Explore;
};

}  // namespace hybrid
