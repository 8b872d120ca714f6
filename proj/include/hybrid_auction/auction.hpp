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

// Hybrid (per-impression + per-click) auction.
//
// Every advertiser j submits a bid (m_j, c_j) and the auctioneer announces an
// index q_j. Ranking and pricing act on the effective bid R_j = max(m_j, c_j q_j).
// The winner pays the next effective bid per impression when m_j > c_j q_j and
// the next effective bid divided by q_j per click otherwise.
//
// Ties in R are broken towards the lowest advertiser id.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace hybrid {

struct Bid {
  double per_impression = 0.0;  ///< m: money per impression
  double per_click = 0.0;       ///< c: money per click

  friend bool operator==(const Bid&, const Bid&) = default;
};

inline void validate(const Bid& bid) {
  if (!(bid.per_impression >= 0.0) || !(bid.per_click >= 0.0) ||
      !std::isfinite(bid.per_impression) || !std::isfinite(bid.per_click)) {
    std::ostringstream msg;
    msg << "bid components must be finite and non-negative (m=" << bid.per_impression
        << ", c=" << bid.per_click << ")";
    throw std::invalid_argument(msg.str());
  }
}

enum class PricingMode { PerImpression, PerClick };

inline std::string_view to_string(PricingMode mode) {
  return mode == PricingMode::PerImpression ? "per_impression" : "per_click";
}

/// CTR multipliers 1 = theta_1 >= theta_2 >= ... >= theta_K >= 0. theta(K) is
/// the virtual multiplier 0.
class SlotLayout {
 public:
  SlotLayout() : thetas_{1.0} {}
  explicit SlotLayout(std::vector<double> thetas) : thetas_(std::move(thetas)) {
    if (thetas_.empty()) throw std::invalid_argument("slot layout needs at least one slot");
    if (thetas_.front() != 1.0)
      throw std::invalid_argument("slot layout invariant violated: theta_1 must equal 1");
    for (std::size_t i = 1; i < thetas_.size(); ++i) {
      if (!(thetas_[i] >= 0.0) || thetas_[i] > thetas_[i - 1])
        throw std::invalid_argument(
            "slot layout invariant violated: multipliers must be non-increasing and >= 0");
    }
  }

  std::size_t slots() const noexcept { return thetas_.size(); }
  double theta(std::size_t slot) const noexcept {
    return slot < thetas_.size() ? thetas_[slot] : 0.0;
  }
  const std::vector<double>& thetas() const noexcept { return thetas_; }

 private:
  std::vector<double> thetas_;
};

/// Result for one allocated slot.
struct SlotAward {
  std::size_t slot = 0;
  std::size_t advertiser = 0;
  PricingMode mode = PricingMode::PerClick;
  double price = 0.0;  ///< per impression or per click, according to `mode`
  double effective_bid = 0.0;
  double effective_charge = 0.0;

  friend bool operator==(const SlotAward&, const SlotAward&) = default;
};

struct AuctionOutcome {
  std::vector<SlotAward> slots;
  friend bool operator==(const AuctionOutcome&, const AuctionOutcome&) = default;
};

inline double effective_bid(const Bid& bid, double q) {
  validate(bid);
  if (!(q >= 0.0)) throw std::invalid_argument("auctioneer index must be non-negative");
  return std::max(bid.per_impression, bid.per_click * q);
}

namespace detail {

inline void check_sizes(std::span<const Bid> bids, std::span<const double> qs) {
  if (bids.size() != qs.size())
    throw std::invalid_argument("bids and auctioneer indices must have equal length");
  if (bids.empty()) throw std::invalid_argument("auction needs at least one participant");
}

/// Applies the hybrid pricing rule for an effective charge `charge`.
inline void price_award(SlotAward& award, const Bid& bid, double q, double charge) {
  award.effective_charge = charge;
  if (bid.per_impression > bid.per_click * q) {
    award.mode = PricingMode::PerImpression;
    award.price = std::min(charge, bid.per_impression);
  } else {
    if (!(q > 0.0))
      throw std::domain_error("per-click price undefined: winner's auctioneer index is zero");
    award.mode = PricingMode::PerClick;
    award.price = std::min(charge / q, bid.per_click);
  }
}

}  // namespace detail

/// Single-slot hybrid auction. With one participant the runner-up effective
/// bid is a zero reserve.
inline SlotAward run_single_slot(std::span<const Bid> bids, std::span<const double> qs) {
  detail::check_sizes(bids, qs);
  std::size_t winner = 0;
  double best = effective_bid(bids[0], qs[0]);
  double second = 0.0;
  for (std::size_t j = 1; j < bids.size(); ++j) {
    const double r = effective_bid(bids[j], qs[j]);
    if (r > best) {
      second = best;
      best = r;
      winner = j;
    } else if (r > second) {
      second = r;
    }
  }
  SlotAward award;
  award.slot = 0;
  award.advertiser = winner;
  award.effective_bid = best;
  detail::price_award(award, bids[winner], qs[winner], second);
  return award;
}

/// Legacy per-click auction: ranks on c_j q_j, ignores m_j, charges the next
/// c q divided by the winner's q per click.
inline SlotAward run_per_click_baseline(std::span<const Bid> bids, std::span<const double> qs) {
  detail::check_sizes(bids, qs);
  std::size_t winner = 0;
  double best = bids[0].per_click * qs[0];
  double second = 0.0;
  for (std::size_t j = 1; j < bids.size(); ++j) {
    const double r = bids[j].per_click * qs[j];
    if (r > best) {
      second = best;
      best = r;
      winner = j;
    } else if (r > second) {
      second = r;
    }
  }
  if (!(qs[winner] > 0.0))
    throw std::domain_error("per-click price undefined: winner's auctioneer index is zero");
  SlotAward award;
  award.advertiser = winner;
  award.mode = PricingMode::PerClick;
  award.effective_bid = best;
  award.effective_charge = second;
  award.price = std::min(second / qs[winner], bids[winner].per_click);
  return award;
}

/// Laddered multi-slot hybrid auction. Rank j (0-based) takes slot j and its
/// effective charge is
///   e_j = sum_{i=j}^{K-1} (theta_i - theta_{i+1}) / theta_j * R_{i+1},
/// with missing bidders padded by zero effective bids. Prices are expressed in
/// top-slot units: e_j per impression or e_j / q_j per click.
inline AuctionOutcome run_multi_slot(std::span<const Bid> bids, std::span<const double> qs,
                                     const SlotLayout& layout) {
  detail::check_sizes(bids, qs);
  const std::size_t n = bids.size();
  const std::size_t k_slots = layout.slots();

  std::vector<double> r(n);
  for (std::size_t j = 0; j < n; ++j) r[j] = effective_bid(bids[j], qs[j]);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });

  auto ranked_bid = [&](std::size_t rank) { return rank < n ? r[order[rank]] : 0.0; };

  AuctionOutcome outcome;
  const std::size_t filled = std::min(n, k_slots);
  outcome.slots.reserve(filled);
  for (std::size_t j = 0; j < filled; ++j) {
    const double theta_j = layout.theta(j);
    if (!(theta_j > 0.0))
      throw std::domain_error("assigned slot has a zero CTR multiplier");
    double charge = 0.0;
    for (std::size_t i = j; i < k_slots; ++i)
      charge += ((layout.theta(i) - layout.theta(i + 1)) / theta_j) * ranked_bid(i + 1);
    SlotAward award;
    award.slot = j;
    award.advertiser = order[j];
    award.effective_bid = r[order[j]];
    detail::price_award(award, bids[order[j]], qs[order[j]], charge);
    outcome.slots.push_back(award);
  }
  return outcome;
}

}  // namespace hybrid
