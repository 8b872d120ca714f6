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

// JSON scenario files.
//
//   {
//     "name": "two_bidders",
//     "advertisers": [
//       {"valuation": 1.0, "strategy": "truthful", "prior": "beta:1,1"},
//       {"valuation": 1.0, "strategy": "explore", "epsilon": 0.1,
//        "true_ctr": 0.5, "prior": "beta:1,20"},
//       {"valuation": 2.0, "strategy": "risk", "utility": "averse",
//        "lambda": 2.0, "prior": "beta:2,8"}
//     ],
//     "auctioneer": {"index": "gittins", "gamma_a": 0.5},
//     "discounts": {"global_gamma": 0.9, "gamma_b": 0.5},
//     "slots": {"theta": [1.0]},
//     "run": {"rounds": 100, "trials": 50, "seed": 7}
//   }
//
// "prior" is the auctioneer's prior Q. An optional "advertiser_prior" sets
// the advertiser's own belief P. Unknown keys are rejected.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

#include "json.hpp"

#include "hybrid_auction/sim.hpp"

namespace hybrid {

/// Malformed or invalid scenario file.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ScenarioError(path + ": " + what);
}

inline void reject_unknown(const json& obj, const std::string& path,
                           std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto k : allowed) known = known || item.key() == k;
    if (!known) fail(path, "unknown key \"" + item.key() + "\"");
  }
}

inline std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline double get_number(const json& obj, std::string_view key, const std::string& path) {
  const json& v = obj.at(std::string(key));
  if (!v.is_number()) fail(join(path, key), "expected a number");
  return v.get<double>();
}

inline std::uint64_t get_count(const json& obj, std::string_view key, const std::string& path) {
  const json& v = obj.at(std::string(key));
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  fail(join(path, key), "expected a non-negative integer");
}

inline std::string get_string(const json& obj, std::string_view key, const std::string& path) {
  const json& v = obj.at(std::string(key));
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

inline double parse_real(std::string_view text, const std::string& path) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    fail(path, "malformed number \"" + std::string(text) + "\"");
  return value;
}

/// Runs `f`, re-raising invalid_argument as a ScenarioError at `path`.
template <typename F>
auto at_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

}  // namespace detail

/// Parses "point:p" or "beta:a,b".
inline Prior parse_prior(std::string_view text, const std::string& path = "prior") {
  if (text.rfind("point:", 0) == 0) {
    const double p = detail::parse_real(text.substr(6), path);
    return detail::at_path(path, [&] { return Prior::point(p); });
  }
  if (text.rfind("beta:", 0) == 0) {
    const std::string_view body = text.substr(5);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) detail::fail(path, "beta prior needs \"beta:a,b\"");
    const double a = detail::parse_real(body.substr(0, comma), path);
    const double b = detail::parse_real(body.substr(comma + 1), path);
    return detail::at_path(path, [&] { return Prior::beta(a, b); });
  }
  detail::fail(path, "prior must be \"point:p\" or \"beta:a,b\", got \"" + std::string(text) + "\"");
}

namespace detail {

inline AdvertiserSpec parse_advertiser(const json& obj, const std::string& path) {
  reject_unknown(obj, path,
                 {"valuation", "strategy", "prior", "advertiser_prior", "true_ctr", "epsilon",
                  "utility", "lambda"});
  AdvertiserSpec spec;
  if (!obj.contains("valuation")) fail(path, "missing \"valuation\"");
  spec.valuation = get_number(obj, "valuation", path);
  if (!obj.contains("prior")) fail(path, "missing \"prior\"");
  spec.auctioneer_prior = parse_prior(get_string(obj, "prior", path), join(path, "prior"));
  if (obj.contains("advertiser_prior"))
    spec.advertiser_prior = parse_prior(get_string(obj, "advertiser_prior", path),
                                        join(path, "advertiser_prior"));
  if (obj.contains("true_ctr")) spec.true_ctr = get_number(obj, "true_ctr", path);

  const std::string strategy =
      obj.contains("strategy") ? get_string(obj, "strategy", path) : std::string("truthful");
  auto forbid = [&](std::string_view key) {
    if (obj.contains(std::string(key)))
      fail(join(path, key), "not a parameter of strategy \"" + strategy + "\"");
  };
  auto require = [&](std::string_view key) {
    if (!obj.contains(std::string(key)))
      fail(path, "strategy \"" + strategy + "\" requires \"" + std::string(key) + "\"");
  };

  if (strategy == "truthful" || strategy == "bidding_index") {
    forbid("epsilon");
    forbid("utility");
    forbid("lambda");
    spec.strategy = strategy == "truthful" ? StrategySpec{TruthfulStrategy{}}
                                           : StrategySpec{BiddingIndexStrategy{}};
  } else if (strategy == "explore") {
    forbid("utility");
    forbid("lambda");
    require("epsilon");
    spec.strategy = ExploreStrategy{get_number(obj, "epsilon", path)};
  } else if (strategy == "risk") {
    forbid("epsilon");
    require("utility");
    const std::string u = get_string(obj, "utility", path);
    if (u == "neutral") {
      forbid("lambda");
      spec.strategy = RiskStrategy{RiskNeutral{}};
    } else if (u == "averse" || u == "seeking") {
      require("lambda");
      const double lambda = get_number(obj, "lambda", path);
      spec.strategy = u == "averse" ? RiskStrategy{ExponentialAverse{lambda}}
                                    : RiskStrategy{ExponentialSeeking{lambda}};
    } else {
      fail(join(path, "utility"), "expected \"neutral\", \"averse\" or \"seeking\"");
    }
  } else {
    fail(join(path, "strategy"),
         "unknown strategy \"" + strategy + "\" (expected truthful, risk, bidding_index, explore)");
  }
  return spec;
}

/// 1-based line and column of a byte offset.
inline std::string locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline Scenario parse_scenario(std::string_view text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the offset one past the offending byte.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ScenarioError("parse error at " + detail::locate(text, at) + ": " + e.what());
  }

  detail::reject_unknown(root, "scenario",
                         {"name", "advertisers", "auctioneer", "discounts", "slots", "run"});
  Scenario s;
  if (root.contains("name")) s.name = detail::get_string(root, "name", "");

  if (!root.contains("advertisers") || !root["advertisers"].is_array() ||
      root["advertisers"].empty())
    detail::fail("advertisers", "expected a non-empty list");
  const json& ads = root["advertisers"];
  for (std::size_t j = 0; j < ads.size(); ++j)
    s.advertisers.push_back(
        detail::parse_advertiser(ads[j], "advertisers[" + std::to_string(j) + "]"));

  if (root.contains("auctioneer")) {
    const json& a = root["auctioneer"];
    detail::reject_unknown(a, "auctioneer", {"index", "gamma_a"});
    const std::string index = a.contains("index") ? detail::get_string(a, "index", "auctioneer")
                                                  : std::string("mean");
    if (index == "mean") {
      if (a.contains("gamma_a")) detail::fail("auctioneer.gamma_a", "only used with index \"gittins\"");
      s.auctioneer = MeanIndex{};
    } else if (index == "gittins") {
      if (!a.contains("gamma_a")) detail::fail("auctioneer", "index \"gittins\" requires \"gamma_a\"");
      s.auctioneer = GittinsIndex{detail::get_number(a, "gamma_a", "auctioneer")};
    } else {
      detail::fail("auctioneer.index", "expected \"mean\" or \"gittins\"");
    }
  }

  if (root.contains("discounts")) {
    const json& d = root["discounts"];
    detail::reject_unknown(d, "discounts", {"global_gamma", "gamma_b"});
    if (d.contains("global_gamma")) s.global_gamma = detail::get_number(d, "global_gamma", "discounts");
    if (d.contains("gamma_b")) s.gamma_b = detail::get_number(d, "gamma_b", "discounts");
  }

  if (root.contains("slots")) {
    const json& sl = root["slots"];
    detail::reject_unknown(sl, "slots", {"theta"});
    if (!sl.contains("theta") || !sl["theta"].is_array())
      detail::fail("slots.theta", "expected a list of multipliers");
    std::vector<double> thetas;
    for (const auto& t : sl["theta"]) {
      if (!t.is_number()) detail::fail("slots.theta", "expected numbers");
      thetas.push_back(t.get<double>());
    }
    s.layout = detail::at_path("slots.theta", [&] { return SlotLayout(thetas); });
  }

  if (root.contains("run")) {
    const json& r = root["run"];
    detail::reject_unknown(r, "run", {"rounds", "trials", "seed"});
    if (r.contains("rounds")) s.rounds = detail::get_count(r, "rounds", "run");
    if (r.contains("trials")) s.trials = detail::get_count(r, "trials", "run");
    if (r.contains("seed")) s.seed = detail::get_count(r, "seed", "run");
  }

  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace hybrid
