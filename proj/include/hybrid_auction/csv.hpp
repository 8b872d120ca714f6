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

// Results tables: experiment, parameter columns, metric, value, stderr.

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace hybrid {

/// Round-trip decimal rendering with 17 significant digits ("%.17g").
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("malformed number: " + std::string(text));
  return value;
}

/// Quotes a field when it contains a separator, quote or newline.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class ResultsTable {
 public:
  ResultsTable(std::string experiment, std::vector<std::pair<std::string, std::string>> params)
      : experiment_(std::move(experiment)), params_(std::move(params)) {}

  void add(std::string metric, double value, double std_error = 0.0) {
    rows_.push_back({std::move(metric), value, std_error});
  }

  void write(std::ostream& out) const {
    out << "experiment";
    for (const auto& [name, _] : params_) out << ',' << csv_field(name);
    out << ",metric,value,stderr\n";
    for (const auto& row : rows_) {
      out << csv_field(experiment_);
      for (const auto& [_, value] : params_) out << ',' << csv_field(value);
      out << ',' << csv_field(row.metric) << ',' << format_double(row.value) << ','
          << format_double(row.std_error) << '\n';
    }
  }

  /// Aligned human-readable summary.
  void write_summary(std::ostream& out) const {
    std::size_t width = 6;
    for (const auto& row : rows_) width = std::max(width, row.metric.size());
    out << experiment_;
    for (const auto& [name, value] : params_) out << ' ' << name << '=' << value;
    out << '\n';
    for (const auto& row : rows_) {
      out << "  " << row.metric << std::string(width - row.metric.size() + 2, ' ')
          << format_double(row.value);
      if (row.std_error != 0.0) out << "  +/- " << format_double(row.std_error);
      out << '\n';
    }
  }

  struct Row {
    std::string metric;
    double value;
    double std_error;
  };
  const std::vector<Row>& rows() const noexcept { return rows_; }

 private:
  std::string experiment_;
  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<Row> rows_;
};

}  // namespace hybrid
