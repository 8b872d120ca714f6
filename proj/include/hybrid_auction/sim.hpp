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

// Repeated-auction Monte Carlo engine.
//
// A trial fixes every advertiser's true CTR (given, or drawn once from the
// auctioneer's initial prior), then runs `rounds` hybrid auctions. Shown ads
// are clicked with probability theta_slot * ctr. Only the top-slot occupant
// observes a Bernoulli(ctr) outcome, so only its advertiser and auctioneer
// priors are updated. Revenue and profit are discounted by the global gamma
// as gamma^t.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "hybrid_auction/auction.hpp"
#include "hybrid_auction/indices.hpp"
#include "hybrid_auction/priors.hpp"
#include "hybrid_auction/stats.hpp"
#include "hybrid_auction/strategies.hpp"

namespace hybrid {

struct MeanIndex {};
struct GittinsIndex {
  double gamma_a;
};
using AuctioneerIndexSpec = std::variant<MeanIndex, GittinsIndex>;

struct AdvertiserSpec {
  double valuation = 1.0;
  StrategySpec strategy = TruthfulStrategy{};
  Prior auctioneer_prior = Prior::beta(1.0, 1.0);  ///< Q at t = 0
  std::optional<Prior> advertiser_prior;           ///< P at t = 0, see initial_state
  std::optional<double> true_ctr;
};

/// P defaults to the point mass at true_ctr when the CTR is known, otherwise
/// to the auctioneer's prior (an uninformed advertiser).
inline AdvertiserState initial_state(const AdvertiserSpec& spec) {
  AdvertiserState s;
  s.valuation = spec.valuation;
  s.true_ctr = spec.true_ctr;
  s.auctioneer_prior_view = spec.auctioneer_prior;
  if (spec.advertiser_prior) {
    s.advertiser_prior = *spec.advertiser_prior;
  } else if (spec.true_ctr) {
    s.advertiser_prior = Prior::point(*spec.true_ctr);
  } else {
    s.advertiser_prior = spec.auctioneer_prior;
  }
  s.strategy = spec.strategy;
  return s;
}

struct Scenario {
  std::string name = "scenario";
  std::vector<AdvertiserSpec> advertisers;
  AuctioneerIndexSpec auctioneer = MeanIndex{};
  double global_gamma = 0.0;
  double gamma_b = 0.0;
  SlotLayout layout;
  std::uint64_t rounds = 1;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  IndexOptions index_options;
  RiskBidOptions risk_options;
};

inline void validate(const Scenario& s) {
  if (s.advertisers.empty()) throw std::invalid_argument("scenario needs at least one advertiser");
  if (s.rounds < 1) throw std::invalid_argument("invariant violated: rounds >= 1");
  if (s.trials < 1) throw std::invalid_argument("invariant violated: trials >= 1");
  DiscountFactor{s.global_gamma};
  DiscountFactor{s.gamma_b};
  if (const auto* g = std::get_if<GittinsIndex>(&s.auctioneer)) DiscountFactor{g->gamma_a};
  validate(s.index_options);
  for (std::size_t j = 0; j < s.advertisers.size(); ++j) {
    try {
      validate(initial_state(s.advertisers[j]));
    } catch (const std::invalid_argument& e) {
      std::ostringstream msg;
      msg << "advertisers[" << j << "]: " << e.what();
      throw std::invalid_argument(msg.str());
    }
  }
}

/// Auctioneer index function for a scenario. Gittins values are memoized on
/// the Beta parameters; the cache is owned by the returned function.
inline AuctioneerIndexFn make_index_fn(const AuctioneerIndexSpec& spec, const IndexOptions& opts) {
  if (std::holds_alternative<MeanIndex>(spec)) return mean_index();
  const DiscountFactor gamma_a{std::get<GittinsIndex>(spec).gamma_a};
  auto cache = std::make_shared<std::map<std::pair<double, double>, double>>();
  return [gamma_a, opts, cache](const Prior& q) {
    if (q.is_point()) return q.point_value();
    const auto key = std::make_pair(q.beta_params().alpha(), q.beta_params().beta());
    if (auto it = cache->find(key); it != cache->end()) return it->second;
    const double value = gittins_index(q.beta_params(), gamma_a, opts);
    cache->emplace(key, value);
    return value;
  };
}

struct AdvertiserRound {
  Bid bid;
  double q = 0.0;
  double effective_bid = 0.0;
};

struct SlotRecord {
  SlotAward award;
  bool clicked = false;
  double payment = 0.0;           ///< realized
  double expected_payment = 0.0;  ///< given the true CTR
};

struct RoundLog {
  std::uint64_t round = 0;
  std::vector<AdvertiserRound> advertisers;
  std::vector<SlotRecord> slots;
  double revenue = 0.0;  ///< sum of slot payments, in slot order
  double expected_revenue = 0.0;
  double expected_revenue_per_click = 0.0;  ///< counterfactual per-click auction
  std::vector<Prior> advertiser_posteriors;
  std::vector<Prior> auctioneer_posteriors;
};

struct AdvertiserTotals {
  double profit = 0.0;    ///< discounted v * clicks - payments
  double payments = 0.0;  ///< discounted
  double impressions = 0.0;
  double clicks = 0.0;
  // Explore-phase accounting, undiscounted; only meaningful for explorers.
  double explore_impressions = 0.0;
  double explore_clicks = 0.0;
  double explore_payments = 0.0;
  bool explore_completed = false;
};

struct TrialTotals {
  double revenue = 0.0;
  double expected_revenue = 0.0;
  double expected_revenue_per_click = 0.0;
  std::vector<double> true_ctrs;
  std::vector<AdvertiserTotals> advertisers;
};

/// State of one trial.
class Market {
 public:
  Market(const Scenario& scenario, std::uint64_t trial)
      : scenario_(&scenario),
        rng_(derive_seed(scenario.seed, trial)),
        index_fn_(make_index_fn(scenario.auctioneer, scenario.index_options)) {
    const std::size_t n = scenario.advertisers.size();
    states_.reserve(n);
    explorers_.resize(n);
    totals_.advertisers.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& spec = scenario.advertisers[j];
      states_.push_back(initial_state(spec));
      const double ctr = spec.true_ctr ? *spec.true_ctr : sample(spec.auctioneer_prior, rng_);
      totals_.true_ctrs.push_back(ctr);
      if (const auto* e = std::get_if<ExploreStrategy>(&spec.strategy))
        explorers_[j].emplace(spec.valuation, ctr, e->epsilon);
    }
  }

  std::uint64_t round() const noexcept { return round_; }
  const TrialTotals& totals() const noexcept { return totals_; }
  const std::vector<AdvertiserState>& states() const noexcept { return states_; }
  const std::optional<Explorer>& explorer(std::size_t j) const { return explorers_.at(j); }

  RoundLog run_round() {
    const Scenario& sc = *scenario_;
    const std::size_t n = states_.size();
    const double discount = std::pow(sc.global_gamma, static_cast<double>(round_));

    RoundLog log;
    log.round = round_;
    log.advertisers.resize(n);
    std::vector<Bid> bids(n);
    std::vector<double> qs(n);
    std::vector<bool> exploring(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      const AdvertiserState& st = states_[j];
      qs[j] = index_fn_(st.auctioneer_prior_view);
      bids[j] = std::visit(
          [&](const auto& strat) -> Bid {
            using T = std::decay_t<decltype(strat)>;
            if constexpr (std::is_same_v<T, TruthfulStrategy>) {
              return truthful_bid(st.valuation, mean(st.advertiser_prior));
            } else if constexpr (std::is_same_v<T, RiskStrategy>) {
              return risk_bid(st.valuation, st.advertiser_prior, strat.utility, sc.risk_options);
            } else if constexpr (std::is_same_v<T, BiddingIndexStrategy>) {
              return bidding_index_bid(st, DiscountFactor{sc.gamma_b}, index_fn_,
                                       sc.index_options);
            } else {
              Explorer& ex = *explorers_[j];
              const Bid b = ex.bid(st.auctioneer_prior_view);
              exploring[j] = ex.phase() == ExplorePhase::Explore;
              return b;
            }
          },
          st.strategy);
      log.advertisers[j] = {bids[j], qs[j], effective_bid(bids[j], qs[j])};
    }

    AuctionOutcome outcome;
    if (sc.layout.slots() == 1) {
      outcome.slots.push_back(run_single_slot(bids, qs));
    } else {
      outcome = run_multi_slot(bids, qs, sc.layout);
    }

    // Counterfactual legacy auction on the same per-click bids.
    std::vector<Bid> click_only(n);
    for (std::size_t j = 0; j < n; ++j) click_only[j] = {0.0, bids[j].per_click};
    if (sc.layout.slots() == 1) {
      const SlotAward base = run_per_click_baseline(click_only, qs);
      log.expected_revenue_per_click = base.price * totals_.true_ctrs[base.advertiser];
    } else {
      for (const auto& a : run_multi_slot(click_only, qs, sc.layout).slots)
        log.expected_revenue_per_click +=
            a.price * sc.layout.theta(a.slot) * totals_.true_ctrs[a.advertiser];
    }

    for (const SlotAward& award : outcome.slots) {
      const std::size_t j = award.advertiser;
      const double theta = sc.layout.theta(award.slot);
      const double ctr = totals_.true_ctrs[j];
      SlotRecord rec;
      rec.award = award;
      rec.clicked = std::bernoulli_distribution(std::clamp(theta * ctr, 0.0, 1.0))(rng_);
      if (award.mode == PricingMode::PerImpression) {
        rec.payment = theta * award.price;
        rec.expected_payment = theta * award.price;
      } else {
        rec.payment = rec.clicked ? award.price : 0.0;
        rec.expected_payment = award.price * theta * ctr;
      }
      log.revenue += rec.payment;
      log.expected_revenue += rec.expected_payment;

      AdvertiserTotals& tot = totals_.advertisers[j];
      const double value = rec.clicked ? states_[j].valuation : 0.0;
      tot.profit += discount * (value - rec.payment);
      tot.payments += discount * rec.payment;
      tot.impressions += 1.0;
      tot.clicks += rec.clicked ? 1.0 : 0.0;
      if (exploring[j] && award.slot == 0) {
        tot.explore_impressions += 1.0;
        tot.explore_clicks += rec.clicked ? 1.0 : 0.0;
        tot.explore_payments += rec.payment;
      }
      if (award.slot == 0) {
        const std::uint64_t c = rec.clicked ? 1 : 0;
        states_[j].advertiser_prior = update(states_[j].advertiser_prior, c, 1);
        states_[j].auctioneer_prior_view = update(states_[j].auctioneer_prior_view, c, 1);
      }
      log.slots.push_back(rec);
    }

    for (std::size_t j = 0; j < n; ++j) {
      if (explorers_[j] && !(mean(states_[j].auctioneer_prior_view) < explorers_[j]->target()))
        totals_.advertisers[j].explore_completed = true;
    }

    totals_.revenue += discount * log.revenue;
    totals_.expected_revenue += discount * log.expected_revenue;
    totals_.expected_revenue_per_click += discount * log.expected_revenue_per_click;

    log.advertiser_posteriors.reserve(n);
    log.auctioneer_posteriors.reserve(n);
    for (const auto& st : states_) {
      log.advertiser_posteriors.push_back(st.advertiser_prior);
      log.auctioneer_posteriors.push_back(st.auctioneer_prior_view);
    }
    ++round_;
    return log;
  }

 private:
  const Scenario* scenario_;
  Rng rng_;
  AuctioneerIndexFn index_fn_;
  std::vector<AdvertiserState> states_;
  std::vector<std::optional<Explorer>> explorers_;
  std::uint64_t round_ = 0;
  TrialTotals totals_;
};

using RoundSink = std::function<void(std::uint64_t trial, const RoundLog&)>;

inline TrialTotals run_trial(const Scenario& scenario, std::uint64_t trial,
                             const RoundSink& sink = {}) {
  Market market(scenario, trial);
  for (std::uint64_t t = 0; t < scenario.rounds; ++t) {
    const RoundLog log = market.run_round();
    if (sink) sink(trial, log);
  }
  return market.totals();
}

/// Runs all trials, in parallel when threads != 1. Results are indexed by
/// trial, so the output does not depend on scheduling.
inline std::vector<TrialTotals> run_trials(const Scenario& scenario, unsigned threads = 0) {
  validate(scenario);
  const std::uint64_t trials = scenario.trials;
  std::vector<TrialTotals> results(trials);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

  std::atomic<std::uint64_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned w) {
    try {
      for (std::uint64_t i = next++; i < trials; i = next++) results[i] = run_trial(scenario, i);
    } catch (...) {
      errors[w] = std::current_exception();
      next = trials;
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

struct MetricSummary {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;
};

struct Metrics {
  std::vector<MetricSummary> entries;

  const MetricSummary& at(std::string_view name) const {
    for (const auto& m : entries)
      if (m.name == name) return m;
    throw std::out_of_range("unknown metric: " + std::string(name));
  }
  bool contains(std::string_view name) const {
    for (const auto& m : entries)
      if (m.name == name) return true;
    return false;
  }
};

inline Metrics summarize(const Scenario& scenario, const std::vector<TrialTotals>& trials) {
  Metrics out;
  auto add = [&](std::string name, const std::function<double(const TrialTotals&)>& f) {
    RunningStats s;
    for (const auto& t : trials) s.add(f(t));
    out.entries.push_back({std::move(name), s.mean(), s.std_error()});
  };
  add("auctioneer_revenue", [](const TrialTotals& t) { return t.revenue; });
  add("expected_revenue_hybrid", [](const TrialTotals& t) { return t.expected_revenue; });
  add("expected_revenue_per_click",
      [](const TrialTotals& t) { return t.expected_revenue_per_click; });
  {
    std::vector<double> hy, pc;
    for (const auto& t : trials) {
      hy.push_back(t.expected_revenue);
      pc.push_back(t.expected_revenue_per_click);
    }
    double pc_sum = 0.0;
    for (double x : pc) pc_sum += x;
    if (pc_sum != 0.0) {
      const Estimate r = ratio_of_means(hy, pc);
      out.entries.push_back({"revenue_ratio", r.mean, r.std_error});
    }
  }
  for (std::size_t j = 0; j < scenario.advertisers.size(); ++j) {
    const std::string prefix = "advertiser_" + std::to_string(j) + "_";
    add(prefix + "profit", [j](const TrialTotals& t) { return t.advertisers[j].profit; });
    add(prefix + "payments", [j](const TrialTotals& t) { return t.advertisers[j].payments; });
    add(prefix + "impressions",
        [j](const TrialTotals& t) { return t.advertisers[j].impressions; });
    add(prefix + "clicks", [j](const TrialTotals& t) { return t.advertisers[j].clicks; });
    const auto& spec = scenario.advertisers[j];
    if (const auto* e = std::get_if<ExploreStrategy>(&spec.strategy)) {
      const double v = spec.valuation;
      const double eps = e->epsilon;
      add(prefix + "explore_impressions",
          [j](const TrialTotals& t) { return t.advertisers[j].explore_impressions; });
      add(prefix + "explore_loss", [j, v](const TrialTotals& t) {
        const auto& a = t.advertisers[j];
        return a.explore_payments - v * a.explore_clicks;
      });
      add(prefix + "explore_worst_case_loss", [j, v, eps](const TrialTotals& t) {
        const auto& a = t.advertisers[j];
        return v * (a.explore_impressions * t.true_ctrs[j] * (1.0 - eps) - a.explore_clicks);
      });
      add(prefix + "explore_completed",
          [j](const TrialTotals& t) { return t.advertisers[j].explore_completed ? 1.0 : 0.0; });
    }
  }
  return out;
}

inline Metrics run_simulation(const Scenario& scenario, unsigned threads = 0) {
  return summarize(scenario, run_trials(scenario, threads));
}

}  // namespace hybrid
