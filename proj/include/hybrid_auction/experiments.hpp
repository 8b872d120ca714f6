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

// Packaged experiments on the hybrid auction: revenue relative to the legacy
// per-click auction, exploration by a certain advertiser, and the risk
// posture of exponential-utility bidders.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "hybrid_auction/auction.hpp"
#include "hybrid_auction/indices.hpp"
#include "hybrid_auction/priors.hpp"
#include "hybrid_auction/quadrature.hpp"
#include "hybrid_auction/stats.hpp"
#include "hybrid_auction/strategies.hpp"

namespace hybrid {

/// E[min(mu, w)] / mu for w ~ Beta(alpha, beta) and mu = E[w], evaluated as
/// 1 - (1/mu) * integral_0^mu F(x) dx with F the Beta CDF (adaptive
/// Gauss-Kronrod). At least 1 - 1/e whenever alpha, beta >= 1.
inline double lemma3_ratio(double alpha, double beta) {
  const BetaParams params(alpha, beta);
  const double mu = params.mean();
  const double area = integrate_adaptive(
      [&](double x) { return x <= 0.0 ? 0.0 : boost::math::ibeta(alpha, beta, x); }, 0.0, mu,
      1e-11);
  return 1.0 - area / mu;
}

// --- Revenue against the per-click auction, certain truthful bidders -------

struct Theorem2Params {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma_a = 0.0;
  std::size_t advertisers = 2;
  double valuation = 1.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  bool point_prior = false;  ///< CTRs all equal to the prior mean
  IndexOptions index_options;
};

struct Theorem2Result {
  Estimate ratio;  ///< mean hybrid revenue / mean per-click revenue
  Estimate hybrid_revenue;
  Estimate per_click_revenue;
  double q = 0.0;  ///< common auctioneer index
  double min_mean_bound = 0.0;
};

/// CTRs are drawn i.i.d. from the auctioneer's Beta prior; every advertiser
/// knows its CTR and bids (v p, v). Revenue is the expected payment given the
/// drawn CTRs.
inline Theorem2Result experiment_theorem2(const Theorem2Params& params) {
  if (params.advertisers < 1) throw std::invalid_argument("need at least one advertiser");
  if (params.trials < 1) throw std::invalid_argument("invariant violated: trials >= 1");
  const Prior prior = Prior::beta(params.alpha, params.beta);
  const double q = gittins_index(prior, DiscountFactor{params.gamma_a}, params.index_options);

  const std::size_t n = params.advertisers;
  std::vector<double> ctrs(n);
  std::vector<Bid> bids(n);
  const std::vector<double> qs(n, q);
  std::vector<double> hybrid_rev, click_rev;
  hybrid_rev.reserve(params.trials);
  click_rev.reserve(params.trials);

  Rng rng(derive_seed(params.seed, 0));
  for (std::uint64_t t = 0; t < params.trials; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      ctrs[j] = params.point_prior ? mean(prior) : sample(prior, rng);
      bids[j] = truthful_bid(params.valuation, ctrs[j]);
    }
    const SlotAward h = run_single_slot(bids, qs);
    hybrid_rev.push_back(h.mode == PricingMode::PerImpression ? h.price
                                                              : h.price * ctrs[h.advertiser]);
    const SlotAward c = run_per_click_baseline(bids, qs);
    click_rev.push_back(c.price * ctrs[c.advertiser]);
  }

  Theorem2Result out;
  out.ratio = ratio_of_means(hybrid_rev, click_rev);
  RunningStats hs, cs;
  for (double x : hybrid_rev) hs.add(x);
  for (double x : click_rev) cs.add(x);
  out.hybrid_revenue = hs.estimate();
  out.per_click_revenue = cs.estimate();
  out.q = q;
  out.min_mean_bound = lemma3_ratio(params.alpha, params.beta);
  return out;
}

// --- Diffuse priors over many advertisers ----------------------------------

struct TypicalCaseParams {
  int K = 5;  ///< n = 4^K advertisers, CTRs ~ Beta(1, K)
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  double valuation = 1.0;
  bool point_prior = false;
};

struct TypicalCaseResult {
  std::uint64_t advertisers = 0;
  double prior_mean = 0.0;
  Estimate hybrid_revenue;
  Estimate per_click_revenue;  ///< empirical, from the legacy auction
  Estimate gain_factor;        ///< hybrid revenue / (prior mean * v)
  Estimate second_ctr;         ///< second-highest CTR
  Estimate prob_second_above_half;
};

inline TypicalCaseResult experiment_typical_case(const TypicalCaseParams& params) {
  if (params.K < 1 || params.K > 10) throw std::invalid_argument("K must lie in [1, 10]");
  if (params.trials < 1) throw std::invalid_argument("invariant violated: trials >= 1");
  const std::size_t n = std::size_t{1} << (2 * params.K);
  const Prior prior = Prior::beta(1.0, static_cast<double>(params.K));
  const double mu = mean(prior);
  const double v = params.valuation;

  std::vector<double> ctrs(n);
  std::vector<Bid> bids(n);
  const std::vector<double> qs(n, mu);
  RunningStats hybrid, click, second, above;
  Rng rng(derive_seed(params.seed, 0));
  for (std::uint64_t t = 0; t < params.trials; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      ctrs[j] = params.point_prior ? mu : sample(prior, rng);
      bids[j] = truthful_bid(v, ctrs[j]);
    }
    const SlotAward h = run_single_slot(bids, qs);
    hybrid.add(h.mode == PricingMode::PerImpression ? h.price : h.price * ctrs[h.advertiser]);
    const SlotAward c = run_per_click_baseline(bids, qs);
    click.add(c.price * ctrs[c.advertiser]);

    double first = -1.0, sec = -1.0;
    for (double p : ctrs) {
      if (p > first) {
        sec = first;
        first = p;
      } else if (p > sec) {
        sec = p;
      }
    }
    second.add(sec);
    above.add(sec >= 0.5 ? 1.0 : 0.0);
  }

  TypicalCaseResult out;
  out.advertisers = n;
  out.prior_mean = mu;
  out.hybrid_revenue = hybrid.estimate();
  out.per_click_revenue = click.estimate();
  out.gain_factor = {hybrid.mean() / (mu * v), hybrid.std_error() / (mu * v)};
  out.second_ctr = second.estimate();
  out.prob_second_above_half = above.estimate();
  return out;
}

// --- Exploration by a certain advertiser -----------------------------------

struct ExploreParams {
  double p = 0.5;  ///< true CTR
  double epsilon = 0.1;
  double alpha = 1.0;  ///< auctioneer prior
  double beta = 20.0;
  double valuation = 1.0;
  std::optional<double> opposing_bid;  ///< R*; defaults to v p (1 - eps)
  std::optional<double> gamma_a;       ///< Gittins auctioneer; mean index when unset
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::uint64_t max_rounds = 1000000;
  IndexOptions index_options;
};

struct ExploreResult {
  std::uint64_t trials = 0;
  std::uint64_t terminated = 0;               ///< explore phase ended within max_rounds
  std::uint64_t zero_length = 0;              ///< phase ended before any impression
  std::uint64_t worst_case_negative = 0;      ///< terminated with T > 0 and T p' - N < 0
  std::uint64_t realized_loss_nonpositive = 0;
  double max_worst_case = -INFINITY;  ///< max over terminated trials of T p' - N
  double max_realized_loss = -INFINITY;
  Estimate phase_length;
  Estimate realized_loss;    ///< payments - v N during the phase
  Estimate worst_case_loss;  ///< v (T p' - N)

  // Per-click overbidder forced to bid R* / q_t per click until the
  // auctioneer's posterior mean reaches p (1 - eps).
  std::uint64_t per_click_terminated = 0;
  Estimate per_click_phase_length;
  Estimate per_click_expected_loss;  ///< sum_t (p * price_t - p v)
  Estimate per_click_realized_loss;
};

inline ExploreResult experiment_explore(const ExploreParams& params) {
  if (!(params.p > 0.0 && params.p <= 1.0)) throw std::invalid_argument("p must lie in (0, 1]");
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (params.trials < 1) throw std::invalid_argument("invariant violated: trials >= 1");
  const Prior start = Prior::beta(params.alpha, params.beta);
  const double v = params.valuation;
  const double target = params.p * (1.0 - params.epsilon);
  const double r_star = params.opposing_bid.value_or(v * target);
  if (!(r_star >= 0.0)) throw std::invalid_argument("opposing bid must be non-negative");
  const AuctioneerIndexFn index_fn =
      params.gamma_a ? gittins_auctioneer_index(DiscountFactor{*params.gamma_a}, params.index_options)
                     : mean_index();

  // The competitor bids purely per impression, so its index never matters.
  const Bid competitor{r_star, 0.0};
  ExploreResult out;
  out.trials = params.trials;
  RunningStats length, realized, worst, pc_length, pc_expected, pc_realized;
  std::bernoulli_distribution click(params.p);

  for (std::uint64_t trial = 0; trial < params.trials; ++trial) {
    Rng rng(derive_seed(params.seed, trial));

    // Hybrid: explore bid (v p', v) until the posterior mean reaches p'.
    {
      Explorer explorer(v, params.p, params.epsilon);
      Prior q_prior = start;
      std::uint64_t shown = 0, clicks = 0;
      double paid = 0.0;
      bool done = false;
      for (std::uint64_t t = 0; t < params.max_rounds; ++t) {
        const Bid bid = explorer.bid(q_prior);
        if (explorer.phase() == ExplorePhase::Exploit) {
          done = true;
          break;
        }
        const std::array<Bid, 2> bids{bid, competitor};
        const std::array<double, 2> qs{index_fn(q_prior), 1.0};
        const SlotAward award = run_single_slot(bids, qs);
        if (award.advertiser != 0) break;  // stationary state: it loses forever
        const bool clicked = click(rng);
        ++shown;
        clicks += clicked ? 1 : 0;
        paid += award.mode == PricingMode::PerImpression ? award.price
                                                         : (clicked ? award.price : 0.0);
        q_prior = update(q_prior, clicked ? 1 : 0, 1);
      }
      if (!done && !(mean(q_prior) < target)) done = true;
      if (done) {
        ++out.terminated;
        const double expr = static_cast<double>(shown) * target - static_cast<double>(clicks);
        const double loss = paid - v * static_cast<double>(clicks);
        if (shown == 0) ++out.zero_length;
        if (shown > 0 && expr < 0.0) ++out.worst_case_negative;
        if (loss <= 0.0) ++out.realized_loss_nonpositive;
        out.max_worst_case = std::max(out.max_worst_case, expr);
        out.max_realized_loss = std::max(out.max_realized_loss, loss);
        length.add(static_cast<double>(shown));
        realized.add(loss);
        worst.add(v * expr);
      }
    }

    // Legacy per-click overbidding until the same stopping condition.
    {
      Prior q_prior = start;
      std::uint64_t rounds = 0;
      double expected = 0.0, realized_pc = 0.0;
      while (mean(q_prior) < target && rounds < params.max_rounds) {
        const double q = index_fn(q_prior);
        // Smallest per-click bid whose effective bid reaches R* in floating point.
        double c = r_star / q;
        while (c * q < r_star) c = std::nextafter(c, INFINITY);
        const std::array<Bid, 2> bids{Bid{0.0, c}, competitor};
        const std::array<double, 2> qs{q, 1.0};
        const SlotAward award = run_single_slot(bids, qs);
        if (award.advertiser != 0) break;
        const bool clicked = click(rng);
        expected += params.p * (award.price - v);
        realized_pc += clicked ? award.price - v : 0.0;
        q_prior = update(q_prior, clicked ? 1 : 0, 1);
        ++rounds;
      }
      if (!(mean(q_prior) < target)) {
        ++out.per_click_terminated;
        pc_length.add(static_cast<double>(rounds));
        pc_expected.add(expected);
        pc_realized.add(realized_pc);
      }
    }
  }

  out.phase_length = length.estimate();
  out.realized_loss = realized.estimate();
  out.worst_case_loss = worst.estimate();
  out.per_click_phase_length = pc_length.estimate();
  out.per_click_expected_loss = pc_expected.estimate();
  out.per_click_realized_loss = pc_realized.estimate();
  return out;
}

// --- Risk posture sweep ------------------------------------------------------

struct RiskSweepParams {
  std::uint64_t instances = 50;
  std::vector<double> lambdas{0.5, 1.0, 2.0, 5.0};
  std::uint64_t seed = 1;
  RiskBidOptions options;
  double slack = 1e-12;  ///< numerical slack on the dominance inequalities
};

struct RiskSweepResult {
  std::uint64_t checks = 0;  ///< instances * lambdas
  std::uint64_t concave_per_click_dominates = 0;    ///< E[U(Y)] >= E[U(X)]
  std::uint64_t convex_per_impression_dominates = 0;  ///< E[U(X)] >= E[U(Y)]
  std::uint64_t concave_mstar_below_mean = 0;       ///< m* <= v E[P]
  std::uint64_t convex_mstar_above_mean = 0;        ///< m* >= v E[P]
  double min_concave_gap = INFINITY;                ///< min E[U(Y)] - E[U(X)]
  double min_convex_gap = INFINITY;                 ///< min E[U(X)] - E[U(Y)]
  double neutral_max_error = 0.0;                   ///< max |m* - v E[P]|, risk neutral
};

/// Random (Beta prior, v, R <= v E[P]) instances with alpha, beta ~ U[1, 10]
/// and v ~ U[0.5, 2]; each is checked for every lambda with both exponential
/// families.
inline RiskSweepResult experiment_risk(const RiskSweepParams& params) {
  RiskSweepResult out;
  Rng rng(derive_seed(params.seed, 0));
  std::uniform_real_distribution<double> shape(1.0, 10.0);
  std::uniform_real_distribution<double> value(0.5, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t i = 0; i < params.instances; ++i) {
    const Prior prior = Prior::beta(shape(rng), shape(rng));
    const double v = value(rng);
    const double p = mean(prior);
    const double r = unit(rng) * v * p;
    const QuadratureRule rule = quadrature_rule(prior, params.options.nodes);

    const Bid neutral = risk_bid(v, prior, RiskNeutral{}, params.options);
    out.neutral_max_error = std::max(out.neutral_max_error, std::abs(neutral.per_impression - v * p));

    for (double lambda : params.lambdas) {
      ++out.checks;
      const auto averse = pricing_utilities(rule, p, ExponentialAverse{lambda}, v, r);
      const auto seeking = pricing_utilities(rule, p, ExponentialSeeking{lambda}, v, r);
      const double cgap = averse.per_click - averse.per_impression;
      const double vgap = seeking.per_impression - seeking.per_click;
      out.min_concave_gap = std::min(out.min_concave_gap, cgap);
      out.min_convex_gap = std::min(out.min_convex_gap, vgap);
      if (cgap >= -params.slack) ++out.concave_per_click_dominates;
      if (vgap >= -params.slack) ++out.convex_per_impression_dominates;

      const double m_averse = risk_bid(v, prior, ExponentialAverse{lambda}, params.options).per_impression;
      const double m_seeking = risk_bid(v, prior, ExponentialSeeking{lambda}, params.options).per_impression;
      if (m_averse <= v * p + params.options.tolerance) ++out.concave_mstar_below_mean;
      if (m_seeking >= v * p - params.options.tolerance) ++out.convex_mstar_above_mean;
    }
  }
  return out;
}

}  // namespace hybrid
