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

// Index computations for Bernoulli arms with Beta beliefs.
//
// Both indices are "largest per-step charge" quantities of a retire-anytime
// game. The game is solved by backward induction on the (impressions, clicks)
// lattice truncated at a finite horizon, and the charge is located by
// bisection: the game value at the root is continuous and strictly decreasing
// in the charge, so the set of charges with non-negative value is an interval
// [0, index].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hybrid_auction/priors.hpp"

namespace hybrid {

class DiscountFactor {
 public:
  explicit DiscountFactor(double gamma) : gamma_(gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0)) {
      std::ostringstream msg;
      msg << "discount factor must lie in [0, 1) (gamma=" << gamma << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  double value() const noexcept { return gamma_; }

 private:
  double gamma_;
};

struct IndexOptions {
  int horizon = 0;  ///< DP truncation depth; 0 picks one from the tail bound.
  double tolerance = 1e-9;
  double bracket_growth = 2.0;
  int max_horizon = 400;
};

inline void validate(const IndexOptions& opts) {
  if (opts.horizon < 0) throw std::invalid_argument("index horizon must be non-negative");
  if (!(opts.tolerance > 0.0)) throw std::invalid_argument("index tolerance must be positive");
  if (!(opts.bracket_growth > 1.0))
    throw std::invalid_argument("bracket growth factor must exceed 1");
  if (opts.max_horizon < 1) throw std::invalid_argument("max_horizon must be positive");
}

/// Truncation depth H with gamma^H * max_payoff / (1 - gamma) below the
/// tolerance, capped at opts.max_horizon. An explicit opts.horizon wins.
inline int resolve_horizon(DiscountFactor gamma, const IndexOptions& opts,
                           double max_payoff = 1.0) {
  if (opts.horizon > 0) return opts.horizon;
  const double g = gamma.value();
  if (g == 0.0) return 1;
  const double target = opts.tolerance * (1.0 - g) / std::max(1.0, max_payoff);
  const double h = std::ceil(std::log(target) / std::log(g));
  if (!(h >= 1.0)) return 1;
  return static_cast<int>(std::min<double>(h, opts.max_horizon));
}

namespace detail {

/// Retire-anytime game on the click lattice. At node (d, k) -- d impressions,
/// k clicks so far -- continuing earns gain(d,k) - charge * rate(d,k) and moves
/// to (d+1, k+1) with probability click_prob(d,k), else to (d+1, k). Value is
/// zero at depth `horizon`.
class StoppingLattice {
 public:
  explicit StoppingLattice(int horizon)
      : horizon_(horizon),
        gain_(node_count(horizon)),
        rate_(node_count(horizon)),
        click_prob_(node_count(horizon)) {}

  static std::size_t node_count(int horizon) {
    const auto h = static_cast<std::size_t>(horizon);
    return h * (h + 1) / 2;
  }
  static std::size_t at(int depth, int clicks) {
    const auto d = static_cast<std::size_t>(depth);
    return d * (d + 1) / 2 + static_cast<std::size_t>(clicks);
  }

  int horizon() const noexcept { return horizon_; }

  void set(int depth, int clicks, double gain, double rate, double click_prob) {
    const auto i = at(depth, clicks);
    gain_[i] = gain;
    rate_[i] = rate;
    click_prob_[i] = click_prob;
  }

  /// Value of the game when the first step is taken unconditionally and the
  /// player stops optimally afterwards.
  double root_value(double charge, double gamma) const {
    std::vector<double> next(static_cast<std::size_t>(horizon_) + 1, 0.0);
    std::vector<double> cur(next.size(), 0.0);
    for (int d = horizon_ - 1; d >= 0; --d) {
      for (int k = 0; k <= d; ++k) {
        const auto i = at(d, k);
        const double pc = click_prob_[i];
        const double cont = gain_[i] - charge * rate_[i] +
                            gamma * (pc * next[static_cast<std::size_t>(k) + 1] +
                                     (1.0 - pc) * next[static_cast<std::size_t>(k)]);
        cur[static_cast<std::size_t>(k)] = d == 0 ? cont : std::max(0.0, cont);
      }
      std::swap(cur, next);
    }
    return next[0];
  }

 private:
  int horizon_;
  std::vector<double> gain_;
  std::vector<double> rate_;
  std::vector<double> click_prob_;
};

/// Largest x in [lo, hi] with `nonneg(x)` true, assuming nonneg(lo) holds and
/// the predicate is monotone (true then false). Returns the bracket midpoint.
template <typename Pred>
double bisect_largest(Pred&& nonneg, double lo, double hi, double tolerance) {
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (nonneg(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Gittins index in per-toss-charge form: the largest charge G for which a
/// coin with belief `prior`, paying 1 on heads and allowed to retire at any
/// time, has non-negative optimal discounted value. Equals the mean when
/// gamma = 0 (returned exactly).
inline double gittins_index(const BetaParams& prior, DiscountFactor gamma,
                            const IndexOptions& opts = {}) {
  validate(opts);
  const double mu = prior.mean();
  if (gamma.value() == 0.0) return mu;

  const int horizon = resolve_horizon(gamma, opts, 1.0);
  detail::StoppingLattice lattice(horizon);
  const double a = prior.alpha();
  const double s = prior.alpha() + prior.beta();
  for (int d = 0; d < horizon; ++d) {
    for (int k = 0; k <= d; ++k) {
      const double p = (a + k) / (s + d);
      lattice.set(d, k, p, 1.0, p);
    }
  }
  const double g = gamma.value();
  return detail::bisect_largest([&](double charge) { return lattice.root_value(charge, g) >= 0.0; },
                                mu, 1.0, opts.tolerance);
}

/// Point masses carry no option value: the index is the point itself.
inline double gittins_index(const Prior& prior, DiscountFactor gamma,
                            const IndexOptions& opts = {}) {
  if (prior.is_point()) return prior.point_value();
  return gittins_index(prior.beta_params(), gamma, opts);
}

/// Maps an auctioneer posterior to its announced index q.
using AuctioneerIndexFn = std::function<double(const Prior&)>;

inline AuctioneerIndexFn mean_index() {
  return [](const Prior& q) { return mean(q); };
}

inline AuctioneerIndexFn gittins_auctioneer_index(DiscountFactor gamma_a, IndexOptions opts = {}) {
  return [gamma_a, opts](const Prior& q) { return gittins_index(q, gamma_a, opts); };
}

/// Advertiser belief P_t and auctioneer belief Q_t. Both are updated on the
/// same click history.
struct BiddingGameState {
  Prior advertiser_prior;
  Prior auctioneer_prior;
};

struct BiddingIndexResult {
  double charge_threshold;  ///< W: largest game charge with non-negative value.
  double bid_index;         ///< B = W * min(1, p0 / q0).
};

/// Bidding index of an advertiser with per-click value v.
///
/// The game continues while the advertiser wants to: each step it earns
/// v * p_t and pays W * min(1, p_t / q_t), with p_t = mean(P_t) and
/// q_t = index_fn(Q_t). Clicks arrive with probability p_t (the advertiser's
/// own belief drives the transition law) and both priors are updated on the
/// outcome. index_fn is invoked once per lattice node, so an expensive index
/// (e.g. Gittins) costs O(H^2) index evaluations per call.
inline BiddingIndexResult bidding_index(double v, const BiddingGameState& state,
                                        DiscountFactor gamma_b, const AuctioneerIndexFn& index_fn,
                                        const IndexOptions& opts = {}) {
  validate(opts);
  if (!(v >= 0.0) || !std::isfinite(v))
    throw std::invalid_argument("per-click value must be finite and non-negative");
  const double p0 = mean(state.advertiser_prior);
  if (!(p0 > 0.0))
    throw std::domain_error("bidding index needs a positive advertiser CTR estimate");
  auto checked_q = [&](const Prior& q_prior) {
    const double q = index_fn(q_prior);
    if (!(q > 0.0) || !std::isfinite(q)) {
      std::ostringstream msg;
      msg << "auctioneer index must be positive on every reachable state (q=" << q << " at "
          << to_string(q_prior) << ")";
      throw std::domain_error(msg.str());
    }
    return q;
  };
  const double q0 = checked_q(state.auctioneer_prior);
  const double rate0 = std::min(1.0, p0 / q0);

  if (gamma_b.value() == 0.0) {
    // One-step game: v p0 - W rate0 >= 0.
    return {v * p0 / rate0, v * p0};
  }

  const int horizon = resolve_horizon(gamma_b, opts, v);
  detail::StoppingLattice lattice(horizon);
  for (int d = 0; d < horizon; ++d) {
    for (int k = 0; k <= d; ++k) {
      const auto clicks = static_cast<std::uint64_t>(k);
      const auto shown = static_cast<std::uint64_t>(d);
      const double p = d == 0 ? p0 : mean(update(state.advertiser_prior, clicks, shown));
      const double q = d == 0 ? q0 : checked_q(update(state.auctioneer_prior, clicks, shown));
      lattice.set(d, k, v * p, std::min(1.0, p / q), p);
    }
  }

  const double g = gamma_b.value();
  auto nonneg = [&](double charge) { return lattice.root_value(charge, g) >= 0.0; };
  double lo = 0.0;
  double hi = std::max(v, opts.tolerance);
  int expansions = 0;
  while (nonneg(hi)) {
    lo = hi;
    hi *= opts.bracket_growth;
    if (++expansions > 2000 || !std::isfinite(hi))
      throw std::runtime_error("bidding index bracket expansion did not terminate");
  }
  const double w = detail::bisect_largest(nonneg, lo, hi, opts.tolerance);
  return {w, w * rate0};
}

}  // namespace hybrid
