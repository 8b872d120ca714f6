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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every tolerance and runtime budget is pinned below.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hybrid_auction/hybrid_auction.hpp"
#include "oracles.hpp"

namespace {

using namespace hybrid;

// Pinned tolerances.
constexpr double kExactTol = 1e-12;         // criteria 1, 5 (gamma = 0), 9
constexpr double kMinMeanSlack = 1e-6;       // criterion 2 grid
constexpr double kMinMeanLimit = 1e-3;       // criterion 2 at (1, 1e4)
constexpr double kRevenueRatioSlack = 0.02;     // criterion 3
constexpr double kRevenueRatioFloor = 0.632;    // criterion 3
constexpr double kGittinsOracleTol = 1e-4;  // criterion 5
constexpr double kBidTol = 1e-6;            // criterion 6
constexpr double kNeutralTol = 1e-8;        // criterion 7
constexpr double kGrowthLo = 1.6;           // criterion 8
constexpr double kGrowthHi = 2.4;

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && v_.pass) v_.detail = what;
    v_.pass = v_.pass && ok;
  }
  void note(const std::string& s) {
    if (v_.pass) v_.detail = s;
  }
  Verdict verdict() const { return v_; }

 private:
  Verdict v_;
};

std::string str(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

double expected_profit(double v, double p, double q, const Bid& bid, double r_star) {
  const std::array<Bid, 2> bids{bid, Bid{r_star, 0.0}};
  const std::array<double, 2> qs{q, 1.0};
  const SlotAward a = run_single_slot(bids, qs);
  if (a.advertiser != 0) return 0.0;
  return a.mode == PricingMode::PerImpression ? v * p - a.price : p * (v - a.price);
}

// --- 1 -----------------------------------------------------------------------
Verdict truthfulness() {
  Checker c;
  constexpr int kGrid = 20;
  constexpr int kDev = 41;
  std::uint64_t comparisons = 0, counterexamples = 0;
  std::array<std::uint64_t, 4> per_class{};
  for (int iv = 0; iv < kGrid; ++iv) {
    const double v = (iv + 1) / 10.0;
    for (int ip = 0; ip < kGrid; ++ip) {
      const double p = (ip + 0.5) / kGrid;
      for (int iq = 0; iq < kGrid; ++iq) {
        const double q = (iq + 0.5) / kGrid;
        for (int ir = 0; ir < kGrid; ++ir) {
          const double r_star = v * 1.2 * ir / (kGrid - 1);
          const double truthful = expected_profit(v, p, q, truthful_bid(v, p), r_star);
          if (std::abs(truthful - oracle::myopic_profit(v, p, q, v * p, v, r_star)) > kExactTol) {
            c.expect(false, "auction profit disagrees with the direct rule");
            return c.verdict();
          }
          for (int im = 0; im < kDev; ++im) {
            for (int ic = 0; ic < kDev; ++ic) {
              const Bid dev{v * p * (im / 20.0), v * (ic / 20.0)};
              const double profit = expected_profit(v, p, q, dev, r_star);
              ++comparisons;
              if (profit > truthful + kExactTol) {
                c.expect(false, "deviation beats truthful at v=" + str(v) + " p=" + str(p) +
                                    " q=" + str(q) + " R*=" + str(r_star));
                return c.verdict();
              }
            }
          }
        }
      }
    }
  }

  // Counterexamples: every non-truthful deviation on the grid, for every
  // (v, p), loses strictly in a constructed (q, R*) situation.
  for (int iv = 0; iv < kGrid; ++iv) {
    const double v = (iv + 1) / 10.0;
    for (int ip = 0; ip < kGrid; ++ip) {
      const double p = (ip + 0.5) / kGrid;
      const double vp = v * p;
      for (int im = 0; im < kDev; ++im) {
        for (int ic = 0; ic < kDev; ++ic) {
          if (im == 20 && ic == 20) continue;
          const Bid dev{vp * (im / 20.0), v * (ic / 20.0)};
          double q = p, r_star = 0.0;
          int cls = 0;
          if (dev.per_impression > vp || dev.per_click > v) {
            // Overbid: perfect prior, rival just above v p.
            cls = 0;
            r_star = 0.5 * (vp + std::max(dev.per_impression, dev.per_click * p));
          } else if (dev.per_impression < vp && dev.per_click < v) {
            // Underbid on both: perfect prior, rival just below v p.
            cls = 1;
            r_star = 0.5 * (vp + std::max(dev.per_impression, dev.per_click * p));
          } else if (dev.per_click < v) {
            // m = v p, c < v: auctioneer overestimates, rival at v p.
            cls = 2;
            const double cap = dev.per_click > 0.0 ? std::min(1.0, vp / dev.per_click) : 1.0;
            q = 0.5 * (p + cap);
            r_star = vp;
          } else {
            // m < v p, c = v: auctioneer underestimates, rival just below v p.
            cls = 3;
            q = 0.5 * p;
            r_star = 0.5 * (vp + std::max(dev.per_impression, dev.per_click * q));
          }
          const double truthful = expected_profit(v, p, q, truthful_bid(v, p), r_star);
          const double profit = expected_profit(v, p, q, dev, r_star);
          if (!(profit < truthful - kExactTol)) {
            c.expect(false, "no strict loss for deviation (" + str(dev.per_impression) + ", " +
                                str(dev.per_click) + ") at v=" + str(v) + " p=" + str(p));
            return c.verdict();
          }
          ++counterexamples;
          ++per_class[static_cast<std::size_t>(cls)];
        }
      }
    }
  }
  c.note(std::to_string(comparisons) + " comparisons; strict losses: overbid " +
         std::to_string(per_class[0]) + ", underbid " + std::to_string(per_class[1]) +
         ", low per-click " + std::to_string(per_class[2]) + ", low per-impression " +
         std::to_string(per_class[3]));
  return c.verdict();
}

// --- 2 -----------------------------------------------------------------------
Verdict lemma3() {
  Checker c;
  const double bound = 1.0 - std::exp(-1.0);
  const std::array<double, 7> grid{1, 1.5, 2, 4, 8, 32, 1000};
  double worst = INFINITY, worst_oracle_gap = 0.0;
  for (double a : grid) {
    for (double b : grid) {
      const double r = lemma3_ratio(a, b);
      worst = std::min(worst, r);
      worst_oracle_gap = std::max(worst_oracle_gap, std::abs(r - oracle::min_mean_ratio(a, b)));
      c.expect(r >= bound - kMinMeanSlack, "ratio below bound at (" + str(a) + ", " + str(b) + ")");
    }
  }
  c.expect(worst_oracle_gap < 1e-9, "quadrature disagrees with the closed form");
  const double tail = lemma3_ratio(1.0, 1e4);
  c.expect(std::abs(tail - 0.63212) < kMinMeanLimit, "value at (1, 1e4) = " + str(tail));
  c.note("min over grid " + str(worst) + "; (1, 1e4) -> " + str(tail) +
         "; max gap to closed form " + str(worst_oracle_gap));
  return c.verdict();
}

// --- 3 -----------------------------------------------------------------------
Verdict theorem2() {
  Checker c;
  Theorem2Params p;
  p.alpha = 1.0;
  p.beta = 1e4;
  p.trials = 100000;
  p.seed = 2024;
  const Theorem2Result tail = experiment_theorem2(p);
  c.expect(tail.ratio.mean >= kRevenueRatioFloor - kRevenueRatioSlack,
           "ratio " + str(tail.ratio.mean) + " at Beta(1, 1e4)");

  p.beta = 1.0;
  const Theorem2Result flat = experiment_theorem2(p);
  const double predicted = oracle::min_mean_ratio(1.0, 1.0);
  c.expect(flat.ratio.mean > predicted - 2.0 * flat.ratio.std_error,
           "ratio " + str(flat.ratio.mean) + " at Beta(1, 1) below " + str(predicted));
  c.note("Beta(1,1e4): " + str(tail.ratio.mean) + " +/- " + str(tail.ratio.std_error) +
         "; Beta(1,1): " + str(flat.ratio.mean) + " +/- " + str(flat.ratio.std_error) +
         " vs oracle " + str(predicted));
  return c.verdict();
}

// --- 4 -----------------------------------------------------------------------
Verdict typical_case() {
  Checker c;
  TypicalCaseParams p;
  p.trials = 10000;
  p.seed = 99;
  double previous = 0.0;
  std::string gains;
  for (int k : {1, 3, 5}) {
    p.K = k;
    const TypicalCaseResult r = experiment_typical_case(p);
    c.expect(r.gain_factor.mean > previous, "gain factor not increasing at K=" + std::to_string(k));
    previous = r.gain_factor.mean;
    gains += (gains.empty() ? "" : ", ") + str(r.gain_factor.mean);
    if (k == 5) {
      c.expect(r.prob_second_above_half.mean >= 0.9,
               "Pr[p(2) >= 1/2] = " + str(r.prob_second_above_half.mean));
      c.expect(r.gain_factor.mean >= 3.0, "gain factor " + str(r.gain_factor.mean));
      gains += "; Pr[p(2) >= 1/2] = " + str(r.prob_second_above_half.mean);
    }
  }
  c.note("gain factors K=1,3,5: " + gains);
  return c.verdict();
}

// --- 5 -----------------------------------------------------------------------
Verdict gittins() {
  Checker c;
  const IndexOptions opts;
  Rng rng(5);
  std::uniform_real_distribution<double> shape(0.2, 20.0);
  for (int i = 0; i < 100; ++i) {
    const BetaParams b(shape(rng), shape(rng));
    c.expect(std::abs(gittins_index(b, DiscountFactor{0.0}) - b.mean()) <= kExactTol,
             "gamma = 0 index differs from the mean");
  }
  const double slack = 2.0 * opts.tolerance;
  for (int i = 0; i < 20; ++i) {
    const BetaParams b(shape(rng), shape(rng));
    double prev = b.mean();
    for (int g = 0; g <= 9; ++g) {
      const double idx = gittins_index(b, DiscountFactor{g / 10.0});
      c.expect(idx >= prev - slack, "index decreases in gamma");
      prev = idx;
    }
  }
  for (int i = 0; i < 20; ++i) {
    const double a = shape(rng), b = shape(rng);
    double prev = INFINITY;
    for (double k : {1.0, 2.0, 4.0, 8.0}) {
      const double idx = gittins_index(BetaParams(k * a, k * b), DiscountFactor{0.5});
      c.expect(idx <= prev + slack, "index increases under sharpening");
      prev = idx;
    }
  }
  double worst = 0.0;
  const std::array<std::array<double, 2>, 3> priors{{{1, 1}, {2, 3}, {1, 5}}};
  for (const auto& ab : priors) {
    for (double g : {0.3, 0.5, 0.7}) {
      const double engine = gittins_index(BetaParams(ab[0], ab[1]), DiscountFactor{g});
      const double brute = oracle::gittins_tree(ab[0], ab[1], g, 20);
      worst = std::max(worst, std::abs(engine - brute));
    }
  }
  c.expect(worst <= kGittinsOracleTol, "depth-20 oracle gap " + str(worst));
  c.note("max gap to depth-20 enumeration " + str(worst));
  return c.verdict();
}

// --- 6 -----------------------------------------------------------------------
// Q starts at Beta(1, 1); the lattice depth is recovered from its parameters.
int depth_of(const Prior& q) {
  return static_cast<int>(std::lround(q.beta_params().alpha() + q.beta_params().beta() - 2.0));
}

Verdict bidding_reductions() {
  Checker c;
  IndexOptions opts;
  Rng rng(6);
  std::uniform_real_distribution<double> shape(0.5, 10.0);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  std::uniform_real_distribution<double> value(0.5, 2.0);
  std::uniform_real_distribution<double> disc(0.1, 0.9);
  double worst_a = 0.0, worst_b = 0.0, worst_c = 0.0, worst_d = 0.0;

  for (int i = 0; i < 10; ++i) {
    AdvertiserState st;
    st.valuation = value(rng);
    st.advertiser_prior = Prior::beta(shape(rng), shape(rng));
    st.auctioneer_prior_view = Prior::beta(shape(rng), shape(rng));
    st.strategy = BiddingIndexStrategy{};
    const Bid b = bidding_index_bid(st, DiscountFactor{0.0}, mean_index(), opts);
    const Bid t = truthful_bid(st.valuation, mean(st.advertiser_prior));
    worst_a = std::max({worst_a, std::abs(b.per_impression - t.per_impression),
                        std::abs(b.per_click - t.per_click)});
  }
  c.expect(worst_a <= kBidTol, "(a) myopic reduction off by " + str(worst_a));

  for (int i = 0; i < 10; ++i) {
    const Prior shared = Prior::beta(shape(rng), shape(rng));
    const double v = value(rng);
    const DiscountFactor g{disc(rng)};
    const auto r = bidding_index(v, {shared, shared}, g, mean_index(), opts);
    worst_b = std::max(worst_b, std::abs(r.charge_threshold - v * gittins_index(shared, g, opts)));
  }
  c.expect(worst_b <= 2.0 * opts.tolerance, "(b) shared-prior reduction off by " + str(worst_b));

  for (int i = 0; i < 10; ++i) {
    const double p = unit(rng), v = value(rng);
    const DiscountFactor g{disc(rng)};
    const Prior point = Prior::point(p);
    // (c) q_t <= p, oscillating below p.
    const AuctioneerIndexFn below = [p](const Prior& q) {
      return p * (0.4 + 0.5 * ((depth_of(q) % 3) / 2.0));
    };
    const auto rc = bidding_index(v, {point, Prior::beta(1.0, 1.0)}, g, below, opts);
    worst_c = std::max(worst_c, std::abs(rc.bid_index - v * p));
    // (d) q_t >= p and nonincreasing towards p.
    const AuctioneerIndexFn above = [p](const Prior& q) {
      return p + (1.0 - p) / (2.0 + depth_of(q));
    };
    const auto rd = bidding_index(v, {point, Prior::beta(1.0, 1.0)}, g, above, opts);
    worst_d = std::max(worst_d, std::abs(rd.bid_index - v * p));
  }
  c.expect(worst_c <= kBidTol, "(c) q <= p reduction off by " + str(worst_c));
  c.expect(worst_d <= kBidTol, "(d) q >= p reduction off by " + str(worst_d));
  c.note("max errors a=" + str(worst_a) + " b=" + str(worst_b) + " c=" + str(worst_c) +
         " d=" + str(worst_d));
  return c.verdict();
}

// --- 7 -----------------------------------------------------------------------
Verdict risk_posture() {
  Checker c;
  RiskSweepParams p;
  p.seed = 7;
  const RiskSweepResult r = experiment_risk(p);
  c.expect(r.checks == 200, "expected 200 checks");
  c.expect(r.concave_per_click_dominates == r.checks, "concave: E[U(Y)] < E[U(X)] somewhere");
  c.expect(r.convex_per_impression_dominates == r.checks, "convex: E[U(X)] < E[U(Y)] somewhere");
  c.expect(r.concave_mstar_below_mean == r.checks, "concave: m* above v E[P] somewhere");
  c.expect(r.convex_mstar_above_mean == r.checks, "convex: m* below v E[P] somewhere");
  c.expect(r.neutral_max_error <= kNeutralTol, "risk-neutral m* error " + str(r.neutral_max_error));
  c.note(std::to_string(r.checks) + " checks; min gaps " + str(r.min_concave_gap) + " / " +
         str(r.min_convex_gap) + "; neutral error " + str(r.neutral_max_error));
  return c.verdict();
}

// --- 8 -----------------------------------------------------------------------
Verdict explore() {
  Checker c;
  ExploreParams p;
  p.p = 0.5;
  p.epsilon = 0.1;
  p.alpha = 1.0;
  p.trials = 10000;
  p.seed = 8;
  std::array<double, 3> losses{};
  const std::array<double, 3> betas{20.0, 40.0, 80.0};
  for (std::size_t i = 0; i < betas.size(); ++i) {
    p.beta = betas[i];
    const ExploreResult r = experiment_explore(p);
    losses[i] = r.per_click_expected_loss.mean;
    c.expect(r.per_click_terminated == r.trials, "per-click phase did not always end");
    if (i == 0) {
      c.expect(r.terminated == r.trials, "explore phase did not always end");
      c.expect(r.zero_length == 0, "unexpected zero-length phase");
      c.expect(r.worst_case_negative == r.trials, "T p' - N >= 0 at some termination");
      c.expect(r.realized_loss_nonpositive == r.trials, "positive realized hybrid loss");
    }
  }
  c.expect(losses[0] > 0.0, "per-click loss not positive");
  const double g1 = losses[1] / losses[0], g2 = losses[2] / losses[1];
  c.expect(g1 >= kGrowthLo && g1 <= kGrowthHi, "growth 20->40 = " + str(g1));
  c.expect(g2 >= kGrowthLo && g2 <= kGrowthHi, "growth 40->80 = " + str(g2));
  c.note("per-click losses " + str(losses[0]) + ", " + str(losses[1]) + ", " + str(losses[2]) +
         " (x" + str(g1) + ", x" + str(g2) + ")");
  return c.verdict();
}

// --- 9 -----------------------------------------------------------------------
Verdict multi_slot() {
  Checker c;
  Rng rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> slots(1, 6), bidders(1, 9);
  double worst = 0.0;
  for (int inst = 0; inst < 10000; ++inst) {
    const int k = slots(rng);
    std::vector<double> theta{1.0};
    for (int i = 1; i < k; ++i) theta.push_back(theta.back() * (0.2 + 0.8 * unit(rng)));
    const SlotLayout layout(theta);
    const int n = bidders(rng);
    std::vector<Bid> bids(static_cast<std::size_t>(n));
    std::vector<double> qs(bids.size());
    for (std::size_t j = 0; j < bids.size(); ++j) {
      bids[j] = {unit(rng) < 0.3 ? 0.0 : unit(rng), unit(rng) < 0.3 ? 0.0 : 2.0 * unit(rng)};
      qs[j] = 0.01 + 0.99 * unit(rng);
    }
    const AuctionOutcome out = run_multi_slot(bids, qs, layout);
    // Effective bids by rank, padded with zeros.
    std::vector<double> r(static_cast<std::size_t>(k) + 1, 0.0);
    for (const auto& s : out.slots) r[s.slot] = s.effective_bid;
    {
      std::vector<double> all;
      for (std::size_t j = 0; j < bids.size(); ++j) all.push_back(effective_bid(bids[j], qs[j]));
      std::sort(all.rbegin(), all.rend());
      for (std::size_t i = 0; i < r.size() && i < all.size(); ++i) r[i] = all[i];
    }
    for (std::size_t j = 0; j < out.slots.size(); ++j) {
      const auto& s = out.slots[j];
      const double th = layout.theta(j), th1 = layout.theta(j + 1);
      const double next_e = j + 1 < out.slots.size() ? out.slots[j + 1].effective_charge
                            // Past the last filled slot the charge sum is over zero bids.
                            : 0.0;
      const double lhs = s.effective_charge * th;
      const double rhs = r[j + 1] * (th - th1) + next_e * th1;
      worst = std::max(worst, std::abs(lhs - rhs));
      const Bid& b = bids[s.advertiser];
      const bool feasible = s.mode == PricingMode::PerImpression ? s.price <= b.per_impression
                                                                 : s.price <= b.per_click;
      c.expect(feasible, "price exceeds the bid component");
      c.expect(s.effective_charge <= s.effective_bid + kExactTol, "charge exceeds effective bid");
    }
  }
  c.expect(worst <= kExactTol, "recurrence residual " + str(worst));

  for (int inst = 0; inst < 1000; ++inst) {
    const int n = bidders(rng);
    std::vector<Bid> bids(static_cast<std::size_t>(n));
    std::vector<double> qs(bids.size());
    for (std::size_t j = 0; j < bids.size(); ++j) {
      bids[j] = {unit(rng) < 0.5 ? 0.0 : unit(rng), unit(rng)};
      qs[j] = 0.01 + 0.99 * unit(rng);
    }
    const AuctionOutcome multi = run_multi_slot(bids, qs, SlotLayout{});
    const SlotAward single = run_single_slot(bids, qs);
    c.expect(multi.slots.size() == 1 && multi.slots[0] == single, "K=1 differs from single slot");
  }
  c.note("max recurrence residual " + str(worst));
  return c.verdict();
}

// --- 10 ----------------------------------------------------------------------
std::string render(const Scenario& s) {
  const Metrics m = run_simulation(s, 0);
  ResultsTable t("run", {{"scenario", s.name}, {"seed", std::to_string(s.seed)}});
  for (const auto& e : m.entries) t.add(e.name, e.value, e.std_error);
  std::ostringstream out;
  t.write(out);
  return out.str();
}

Verdict determinism() {
  Checker c;
  const char* text = R"({
    "name": "determinism",
    "advertisers": [
      {"valuation": 1.0, "strategy": "truthful", "prior": "beta:2,5"},
      {"valuation": 1.2, "strategy": "risk", "utility": "averse", "lambda": 2, "prior": "beta:1,3"},
      {"valuation": 0.9, "strategy": "bidding_index", "prior": "beta:1,2"},
      {"valuation": 1.0, "strategy": "explore", "epsilon": 0.1, "true_ctr": 0.4, "prior": "beta:1,9"}
    ],
    "auctioneer": {"index": "gittins", "gamma_a": 0.3},
    "discounts": {"global_gamma": 0.95, "gamma_b": 0.5},
    "slots": {"theta": [1.0, 0.6]},
    "run": {"rounds": 40, "trials": 24, "seed": 11}
  })";
  const Scenario s = parse_scenario(text);
  const std::string a = render(s), b = render(s);
  c.expect(a == b, "CSV differs between identical runs");
  Scenario serial = s;
  const Metrics one = run_simulation(serial, 1);
  const Metrics many = run_simulation(serial, 4);
  bool same = one.entries.size() == many.entries.size();
  for (std::size_t i = 0; same && i < one.entries.size(); ++i)
    same = one.entries[i].value == many.entries[i].value &&
           one.entries[i].std_error == many.entries[i].std_error;
  c.expect(same, "metrics depend on the thread count");
  c.note(std::to_string(a.size()) + " identical bytes");
  return c.verdict();
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "truthfulness property suite", 60.0, truthfulness},
      {2, "min-mean ratio quadrature", 10.0, lemma3},
      {3, "hybrid vs per-click revenue", 120.0, theorem2},
      {4, "typical-case revenue gain", 180.0, typical_case},
      {5, "Gittins engine", 120.0, gittins},
      {6, "bidding-index reductions", 180.0, bidding_reductions},
      {7, "risk posture", 10.0, risk_posture},
      {8, "explore phase", 120.0, explore},
      {9, "multi-slot laddered charges", 10.0, multi_slot},
      {10, "determinism", 60.0, determinism},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = cr.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.pass && secs > cr.budget_seconds) {
      v.pass = false;
      v.detail = "over the " + str(cr.budget_seconds) + " s budget";
    }
    failures += v.pass ? 0 : 1;
    std::printf("%s  %2d  %-30s %7.2fs  %s\n", v.pass ? "PASS" : "FAIL", cr.id, cr.name, secs,
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
