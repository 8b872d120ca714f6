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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "hybrid_auction/auction.hpp"
#include "oracles.hpp"

namespace hybrid {
namespace {

TEST(EffectiveBid, Examples) {
  EXPECT_EQ(effective_bid({0.3, 1.0}, 0.2), 0.3);
  EXPECT_EQ(effective_bid({0.0, 1.5}, 0.4), 1.5 * 0.4);
  const double v = 2.0, p = 0.3, q = 0.45;
  EXPECT_DOUBLE_EQ(effective_bid({v * p, v}, q), v * std::max(p, q));
}

TEST(EffectiveBid, RejectsInvalidInput) {
  EXPECT_THROW(effective_bid({-0.1, 1.0}, 0.5), std::invalid_argument);
  EXPECT_THROW(effective_bid({0.1, INFINITY}, 0.5), std::invalid_argument);
  EXPECT_THROW(effective_bid({0.1, 1.0}, -0.5), std::invalid_argument);
}

TEST(EffectiveBid, MonotoneInEachArgument) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double m = u(rng), c = u(rng), q = u(rng), d = u(rng);
    const double base = effective_bid({m, c}, q);
    EXPECT_GE(effective_bid({m + d, c}, q), base);
    EXPECT_GE(effective_bid({m, c + d}, q), base);
    EXPECT_GE(effective_bid({m, c}, q + d), base);
  }
}

TEST(SingleSlot, PurePerImpression) {
  const std::vector<Bid> bids{{0.5, 0.0}, {0.3, 0.0}};
  const std::vector<double> qs{0.1, 0.9};
  const SlotAward a = run_single_slot(bids, qs);
  EXPECT_EQ(a.advertiser, 0U);
  EXPECT_EQ(a.mode, PricingMode::PerImpression);
  EXPECT_EQ(a.price, 0.3);
}

TEST(SingleSlot, PurePerClickIsNextPrice) {
  const std::vector<Bid> bids{{0.0, 1.0}, {0.0, 0.8}};
  const std::vector<double> qs{0.5, 0.5};
  const SlotAward a = run_single_slot(bids, qs);
  EXPECT_EQ(a.advertiser, 0U);
  EXPECT_EQ(a.mode, PricingMode::PerClick);
  EXPECT_DOUBLE_EQ(a.price, 0.8);
}

TEST(SingleSlot, MixedBids) {
  const std::vector<Bid> bids{{0.4, 0.5}, {0.0, 0.6}};
  const std::vector<double> qs{0.5, 0.5};
  const SlotAward a = run_single_slot(bids, qs);
  EXPECT_EQ(a.advertiser, 0U);
  EXPECT_EQ(a.effective_bid, 0.4);
  EXPECT_EQ(a.mode, PricingMode::PerImpression);
  EXPECT_DOUBLE_EQ(a.price, 0.3);
}

TEST(SingleSlot, EqualityChargesPerClick) {
  const std::vector<Bid> bids{{0.25, 0.5}, {0.1, 0.0}};
  const std::vector<double> qs{0.5, 1.0};
  const SlotAward a = run_single_slot(bids, qs);
  EXPECT_EQ(a.mode, PricingMode::PerClick);
  EXPECT_DOUBLE_EQ(a.price, 0.1 / 0.5);
}

TEST(SingleSlot, TiesGoToLowestId) {
  const std::vector<Bid> bids{{0.2, 0.0}, {0.3, 0.0}, {0.3, 0.0}};
  const std::vector<double> qs{0.5, 0.5, 0.5};
  const SlotAward a = run_single_slot(bids, qs);
  EXPECT_EQ(a.advertiser, 1U);
  EXPECT_EQ(a.price, 0.3);
}

TEST(SingleSlot, LoneBidderPaysZeroReserve) {
  const std::vector<Bid> bids{{0.2, 0.0}};
  const std::vector<double> qs{0.5};
  EXPECT_EQ(run_single_slot(bids, qs).price, 0.0);
}

TEST(SingleSlot, PerClickWithZeroIndexIsUndefined) {
  const std::vector<Bid> bids{{0.0, 1.0}, {0.0, 0.0}};
  const std::vector<double> qs{0.0, 0.0};
  EXPECT_THROW(run_single_slot(bids, qs), std::domain_error);
}

TEST(SingleSlot, RejectsMismatchedInput) {
  const std::vector<Bid> bids{{0.1, 0.1}};
  const std::vector<double> qs{0.5, 0.5};
  EXPECT_THROW(run_single_slot(bids, qs), std::invalid_argument);
  EXPECT_THROW(run_single_slot({}, {}), std::invalid_argument);
}

TEST(Baseline, Examples) {
  {
    const std::vector<Bid> bids{{9.0, 1.0}, {0.0, 0.8}};
    const std::vector<double> qs{0.5, 0.5};
    const SlotAward a = run_per_click_baseline(bids, qs);
    EXPECT_EQ(a.advertiser, 0U);
    EXPECT_EQ(a.mode, PricingMode::PerClick);
    EXPECT_DOUBLE_EQ(a.price, 0.8);
  }
  {
    const std::vector<Bid> bids{{0.0, 1.0}, {0.0, 0.9}};
    const std::vector<double> qs{0.4, 0.6};
    const SlotAward a = run_per_click_baseline(bids, qs);
    EXPECT_EQ(a.advertiser, 1U);
    EXPECT_DOUBLE_EQ(a.price, 0.4 / 0.6);
  }
  {
    const std::vector<Bid> bids{{0.0, 1.0}};
    const std::vector<double> qs{0.4};
    EXPECT_EQ(run_per_click_baseline(bids, qs).price, 0.0);
  }
}

TEST(Feasibility, RandomInstances) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> n_dist(1, 8);
  for (int i = 0; i < 10000; ++i) {
    const int n = n_dist(rng);
    std::vector<Bid> bids(static_cast<std::size_t>(n));
    std::vector<double> qs(bids.size());
    for (std::size_t j = 0; j < bids.size(); ++j) {
      bids[j] = {u(rng) < 0.3 ? 0.0 : u(rng), u(rng) < 0.3 ? 0.0 : 2.0 * u(rng)};
      qs[j] = 0.001 + u(rng);
    }
    const SlotAward a = run_single_slot(bids, qs);
    const Bid& w = bids[a.advertiser];
    if (a.mode == PricingMode::PerImpression) {
      EXPECT_LE(a.price, w.per_impression);
    } else {
      EXPECT_LE(a.price, w.per_click);
    }
    EXPECT_LE(a.effective_charge, a.effective_bid);
  }
}

TEST(Truthfulness, SmallGridAgainstDirectRule) {
  // Coarse version of the acceptance suite, cross-checked against the
  // two-bidder transcription of the rule.
  for (double v : {0.5, 1.0, 1.7}) {
    for (double p : {0.1, 0.35, 0.8}) {
      for (double q : {0.05, 0.35, 0.9}) {
        for (double r : {0.0, 0.2, 0.35, 0.6, 1.5}) {
          const double truthful = oracle::myopic_profit(v, p, q, v * p, v, r);
          for (int i = 0; i <= 10; ++i) {
            for (int j = 0; j <= 10; ++j) {
              const double m = 2.0 * v * p * i / 10.0, c = 2.0 * v * j / 10.0;
              EXPECT_LE(oracle::myopic_profit(v, p, q, m, c, r), truthful + 1e-12);
            }
          }
        }
      }
    }
  }
}

TEST(SlotLayout, Invariants) {
  EXPECT_NO_THROW(SlotLayout({1.0, 0.5, 0.5, 0.0}));
  EXPECT_THROW(SlotLayout({0.9, 0.5}), std::invalid_argument);
  EXPECT_THROW(SlotLayout({1.0, 0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(SlotLayout(std::vector<double>{}), std::invalid_argument);
  const SlotLayout l({1.0, 0.5});
  EXPECT_EQ(l.theta(2), 0.0);
}

TEST(MultiSlot, WorkedCharges) {
  const std::vector<Bid> bids{{3.0, 0.0}, {2.0, 0.0}, {1.0, 0.0}};
  const std::vector<double> qs{0.5, 0.5, 0.5};
  const AuctionOutcome out = run_multi_slot(bids, qs, SlotLayout({1.0, 0.5}));
  ASSERT_EQ(out.slots.size(), 2U);
  EXPECT_DOUBLE_EQ(out.slots[0].effective_charge, 1.5);
  EXPECT_DOUBLE_EQ(out.slots[1].effective_charge, 1.0);
  // e_j theta_j = R_{j+1} (theta_j - theta_{j+1}) + e_{j+1} theta_{j+1}.
  EXPECT_DOUBLE_EQ(1.5 * 1.0, 2.0 * 0.5 + 1.0 * 0.5);
  EXPECT_EQ(out.slots[0].advertiser, 0U);
  EXPECT_EQ(out.slots[1].advertiser, 1U);
}

TEST(MultiSlot, PadsMissingBidders) {
  const std::vector<Bid> bids{{3.0, 0.0}};
  const std::vector<double> qs{0.5};
  const AuctionOutcome out = run_multi_slot(bids, qs, SlotLayout({1.0, 0.5, 0.2}));
  ASSERT_EQ(out.slots.size(), 1U);
  EXPECT_EQ(out.slots[0].price, 0.0);
}

TEST(MultiSlot, ZeroMultiplierSlotIsRejected) {
  const std::vector<Bid> bids{{3.0, 0.0}, {2.0, 0.0}};
  const std::vector<double> qs{0.5, 0.5};
  EXPECT_THROW(run_multi_slot(bids, qs, SlotLayout({1.0, 0.0})), std::domain_error);
}

TEST(MultiSlot, ChargesNonincreasingInRank) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> theta{1.0};
    for (int k = 1; k < 5; ++k) theta.push_back(theta.back() * (0.1 + 0.9 * u(rng)));
    std::vector<Bid> bids(7);
    std::vector<double> qs(7);
    for (std::size_t j = 0; j < bids.size(); ++j) {
      bids[j] = {u(rng), u(rng)};
      qs[j] = 0.01 + u(rng);
    }
    const AuctionOutcome out = run_multi_slot(bids, qs, SlotLayout(theta));
    for (std::size_t j = 1; j < out.slots.size(); ++j)
      EXPECT_LE(out.slots[j].effective_charge, out.slots[j - 1].effective_charge + 1e-15);
  }
}

TEST(MultiSlot, SingleSlotLayoutMatchesSingleSlotAuction) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Bid> bids(4);
    std::vector<double> qs(4);
    for (std::size_t j = 0; j < bids.size(); ++j) {
      bids[j] = {u(rng) < 0.5 ? 0.0 : u(rng), u(rng)};
      qs[j] = 0.01 + u(rng);
    }
    const AuctionOutcome out = run_multi_slot(bids, qs, SlotLayout{});
    ASSERT_EQ(out.slots.size(), 1U);
    EXPECT_EQ(out.slots[0], run_single_slot(bids, qs));
  }
}

}  // namespace
}  // namespace hybrid
