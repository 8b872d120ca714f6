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

// Command-line front end: run scenario files, named experiments and the
// Gittins index calculator.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hybrid_auction/hybrid_auction.hpp"

namespace {

using namespace hybrid;

struct ExperimentFlags {
  std::string name;
  std::optional<double> alpha, beta, gamma_a, epsilon, p, r_star, valuation;
  std::vector<double> lambdas;
  std::optional<int> k;
  std::optional<std::uint64_t> trials, seed, advertisers, instances, max_rounds;
  bool point_prior = false;
};

std::string fmt(double x) { return format_double(x); }

// Emits the CSV to `out_path` (summary on stdout) or, without a path, the CSV
// on stdout and the summary on stderr.
void emit(const ResultsTable& table, const std::string& out_path) {
  if (out_path.empty()) {
    table.write(std::cout);
    table.write_summary(std::cerr);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  table.write(out);
  if (!out) throw std::runtime_error("failed writing " + out_path);
  table.write_summary(std::cout);
}

void add(ResultsTable& t, const std::string& metric, const Estimate& e) {
  t.add(metric, e.mean, e.std_error);
}

ResultsTable run_theorem2(const ExperimentFlags& f) {
  Theorem2Params p;
  p.alpha = f.alpha.value_or(1.0);
  p.beta = f.beta.value_or(1e4);
  p.gamma_a = f.gamma_a.value_or(0.0);
  p.advertisers = f.advertisers.value_or(2);
  p.valuation = f.valuation.value_or(1.0);
  p.trials = f.trials.value_or(100000);
  p.seed = f.seed.value_or(1);
  p.point_prior = f.point_prior;
  const Theorem2Result r = experiment_theorem2(p);
  ResultsTable t("theorem2", {{"alpha", fmt(p.alpha)},
                              {"beta", fmt(p.beta)},
                              {"gamma_a", fmt(p.gamma_a)},
                              {"advertisers", std::to_string(p.advertisers)},
                              {"trials", std::to_string(p.trials)},
                              {"seed", std::to_string(p.seed)}});
  add(t, "revenue_ratio", r.ratio);
  add(t, "hybrid_revenue", r.hybrid_revenue);
  add(t, "per_click_revenue", r.per_click_revenue);
  t.add("auctioneer_index", r.q);
  t.add("quadrature_ratio", r.min_mean_bound);
  t.add("bound", 1.0 - std::exp(-1.0));
  return t;
}

ResultsTable run_typical(const ExperimentFlags& f) {
  TypicalCaseParams p;
  p.K = f.k.value_or(5);
  p.trials = f.trials.value_or(10000);
  p.seed = f.seed.value_or(1);
  p.valuation = f.valuation.value_or(1.0);
  p.point_prior = f.point_prior;
  const TypicalCaseResult r = experiment_typical_case(p);
  ResultsTable t("typical", {{"K", std::to_string(p.K)},
                             {"trials", std::to_string(p.trials)},
                             {"seed", std::to_string(p.seed)}});
  t.add("advertisers", static_cast<double>(r.advertisers));
  t.add("prior_mean", r.prior_mean);
  add(t, "hybrid_revenue", r.hybrid_revenue);
  add(t, "per_click_revenue", r.per_click_revenue);
  add(t, "gain_factor", r.gain_factor);
  add(t, "second_ctr", r.second_ctr);
  add(t, "prob_second_ctr_at_least_half", r.prob_second_above_half);
  return t;
}

ResultsTable run_explore(const ExperimentFlags& f) {
  ExploreParams p;
  p.p = f.p.value_or(0.5);
  p.epsilon = f.epsilon.value_or(0.1);
  p.alpha = f.alpha.value_or(1.0);
  p.beta = f.beta.value_or(20.0);
  p.valuation = f.valuation.value_or(1.0);
  p.opposing_bid = f.r_star;
  p.gamma_a = f.gamma_a;
  p.trials = f.trials.value_or(10000);
  p.seed = f.seed.value_or(1);
  p.max_rounds = f.max_rounds.value_or(1000000);
  const ExploreResult r = experiment_explore(p);
  const double r_star = p.opposing_bid.value_or(p.valuation * p.p * (1.0 - p.epsilon));
  ResultsTable t("explore", {{"p", fmt(p.p)},
                             {"epsilon", fmt(p.epsilon)},
                             {"alpha", fmt(p.alpha)},
                             {"beta", fmt(p.beta)},
                             {"R_star", fmt(r_star)},
                             {"trials", std::to_string(p.trials)},
                             {"seed", std::to_string(p.seed)}});
  const double n = static_cast<double>(r.trials);
  t.add("terminated_fraction", static_cast<double>(r.terminated) / n);
  t.add("zero_length_fraction", static_cast<double>(r.zero_length) / n);
  t.add("worst_case_negative_fraction", static_cast<double>(r.worst_case_negative) / n);
  t.add("realized_loss_nonpositive_fraction", static_cast<double>(r.realized_loss_nonpositive) / n);
  t.add("max_worst_case_expression", r.max_worst_case);
  t.add("max_realized_loss", r.max_realized_loss);
  add(t, "phase_length", r.phase_length);
  add(t, "realized_loss", r.realized_loss);
  add(t, "worst_case_loss", r.worst_case_loss);
  t.add("per_click_terminated_fraction", static_cast<double>(r.per_click_terminated) / n);
  add(t, "per_click_phase_length", r.per_click_phase_length);
  add(t, "per_click_expected_loss", r.per_click_expected_loss);
  add(t, "per_click_realized_loss", r.per_click_realized_loss);
  return t;
}

ResultsTable run_lemma3(const ExperimentFlags& f) {
  const double alpha = f.alpha.value_or(1.0);
  const double beta = f.beta.value_or(1e4);
  ResultsTable t("lemma3", {{"alpha", fmt(alpha)}, {"beta", fmt(beta)}});
  t.add("ratio", lemma3_ratio(alpha, beta));
  t.add("bound", 1.0 - std::exp(-1.0));
  return t;
}

ResultsTable run_risk(const ExperimentFlags& f) {
  RiskSweepParams p;
  p.instances = f.instances.value_or(50);
  if (!f.lambdas.empty()) p.lambdas = f.lambdas;
  p.seed = f.seed.value_or(1);
  std::string lambdas;
  for (double l : p.lambdas) lambdas += (lambdas.empty() ? "" : ";") + fmt(l);
  const RiskSweepResult r = experiment_risk(p);
  ResultsTable t("risk", {{"instances", std::to_string(p.instances)},
                          {"lambdas", lambdas},
                          {"seed", std::to_string(p.seed)}});
  t.add("checks", static_cast<double>(r.checks));
  t.add("concave_per_click_dominates", static_cast<double>(r.concave_per_click_dominates));
  t.add("convex_per_impression_dominates", static_cast<double>(r.convex_per_impression_dominates));
  t.add("concave_mstar_below_mean", static_cast<double>(r.concave_mstar_below_mean));
  t.add("convex_mstar_above_mean", static_cast<double>(r.convex_mstar_above_mean));
  t.add("min_concave_gap", r.min_concave_gap);
  t.add("min_convex_gap", r.min_convex_gap);
  t.add("neutral_max_error", r.neutral_max_error);
  return t;
}

void write_round_log(std::ostream& out, std::uint64_t trial, const RoundLog& log) {
  for (std::size_t j = 0; j < log.advertisers.size(); ++j) {
    const auto& a = log.advertisers[j];
    const SlotRecord* rec = nullptr;
    for (const auto& s : log.slots)
      if (s.award.advertiser == j) rec = &s;
    out << trial << ',' << log.round << ',' << j << ',' << fmt(a.bid.per_impression) << ','
        << fmt(a.bid.per_click) << ',' << fmt(a.q) << ',' << fmt(a.effective_bid) << ',';
    if (rec) {
      out << rec->award.slot << ',' << to_string(rec->award.mode) << ',' << fmt(rec->award.price)
          << ',' << (rec->clicked ? 1 : 0) << ',' << fmt(rec->payment);
    } else {
      out << ",,,,";
    }
    out << ',' << to_string(log.advertiser_posteriors[j]) << ','
        << to_string(log.auctioneer_posteriors[j]) << '\n';
  }
}

int cmd_run(const std::string& path, const std::string& out_path, const std::string& log_path,
            unsigned threads) {
  const Scenario scenario = load_scenario(path);
  std::cerr << "running " << scenario.name << ": " << scenario.trials << " trials x "
            << scenario.rounds << " rounds\n";
  const Metrics metrics = run_simulation(scenario, threads);

  if (!log_path.empty()) {
    // Round logs are replayed serially; each trial is deterministic.
    std::ofstream log(log_path, std::ios::binary);
    if (!log) throw std::runtime_error("cannot open log file " + log_path);
    log << "trial,round,advertiser,m,c,q,R,slot,mode,price,clicked,payment,"
           "advertiser_posterior,auctioneer_posterior\n";
    for (std::uint64_t trial = 0; trial < scenario.trials; ++trial)
      run_trial(scenario, trial,
                [&](std::uint64_t t, const RoundLog& r) { write_round_log(log, t, r); });
  }

  ResultsTable table("run", {{"scenario", scenario.name},
                             {"rounds", std::to_string(scenario.rounds)},
                             {"trials", std::to_string(scenario.trials)},
                             {"seed", std::to_string(scenario.seed)}});
  for (const auto& m : metrics.entries) table.add(m.name, m.value, m.std_error);
  emit(table, out_path);
  return 0;
}

int cmd_gittins(double alpha, double beta, double gamma, double tol) {
  IndexOptions opts;
  opts.tolerance = tol;
  validate(opts);
  const double g = gittins_index(BetaParams(alpha, beta), DiscountFactor{gamma}, opts);
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, g, std::chars_format::general, 10);
  std::cout << std::string(buf, ptr) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid per-impression / per-click auction toolkit"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, log_path;
  unsigned threads = 0;
  auto* run = app.add_subcommand("run", "Simulate a JSON scenario file and write metrics as CSV");
  run->add_option("file", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_path, "CSV output path (default: stdout)");
  run->add_option("--log", log_path, "Per-round CSV log path");
  run->add_option("--threads", threads, "Worker threads, 0 = all cores")->default_val(0);

  ExperimentFlags ef;
  auto* exp = app.add_subcommand(
      "experiment",
      "Run a named experiment.\n"
      "  theorem2  defaults: --alpha 1 --beta 10000 --gamma-a 0 --advertisers 2 --trials 100000\n"
      "  typical   defaults: --K 5 --trials 10000\n"
      "  explore   defaults: --p 0.5 --epsilon 0.1 --alpha 1 --beta 20 --trials 10000,\n"
      "            --R-star v*p*(1-epsilon), mean auctioneer index unless --gamma-a is given\n"
      "  lemma3    defaults: --alpha 1 --beta 10000\n"
      "  risk      defaults: --instances 50 --lambda 0.5 --lambda 1 --lambda 2 --lambda 5\n"
      "All experiments default to --seed 1.");
  exp->add_option("name", ef.name, "theorem2 | typical | explore | lemma3 | risk")
      ->required()
      ->check(CLI::IsMember({"theorem2", "typical", "explore", "lemma3", "risk"}));
  exp->add_option("--alpha", ef.alpha, "Beta prior alpha");
  exp->add_option("--beta", ef.beta, "Beta prior beta");
  exp->add_option("--gamma-a", ef.gamma_a, "Auctioneer discount factor");
  exp->add_option("--K", ef.k, "Typical case size: 4^K advertisers, Beta(1, K) CTRs");
  exp->add_option("--epsilon", ef.epsilon, "Explore slack");
  exp->add_option("--lambda", ef.lambdas, "Risk parameter(s)");
  exp->add_option("--p", ef.p, "True CTR of the exploring advertiser");
  exp->add_option("--R-star", ef.r_star, "Competing effective bid");
  exp->add_option("--valuation", ef.valuation, "Per-click value v (default 1)");
  exp->add_option("--advertisers", ef.advertisers, "Number of advertisers");
  exp->add_option("--instances", ef.instances, "Random instances for the risk sweep");
  exp->add_option("--max-rounds", ef.max_rounds, "Round cap per explore trial");
  exp->add_option("--trials", ef.trials, "Monte Carlo trials");
  exp->add_option("--seed", ef.seed, "Random seed");
  exp->add_flag("--point-prior", ef.point_prior, "Use point CTRs at the prior mean");
  exp->add_option("--out", out_path, "CSV output path (default: stdout)");

  double g_alpha = 0.0, g_beta = 0.0, g_gamma = 0.0, g_tol = 1e-9;
  auto* git = app.add_subcommand("gittins", "Print the Gittins index of Beta(alpha, beta)");
  git->add_option("alpha", g_alpha)->required();
  git->add_option("beta", g_beta)->required();
  git->add_option("gamma", g_gamma, "Discount factor in [0, 1)")->required();
  git->add_option("--tol", g_tol, "Bisection tolerance")->default_val(1e-9);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(scenario_path, out_path, log_path, threads);
    if (*git) return cmd_gittins(g_alpha, g_beta, g_gamma, g_tol);
    if (*exp) {
      std::cerr << "experiment " << ef.name << "\n";
      ResultsTable table = ef.name == "theorem2" ? run_theorem2(ef)
                           : ef.name == "typical" ? run_typical(ef)
                           : ef.name == "explore" ? run_explore(ef)
                           : ef.name == "lemma3"  ? run_lemma3(ef)
                                                  : run_risk(ef);
      emit(table, out_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
