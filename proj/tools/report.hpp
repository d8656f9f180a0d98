// Copyright 2026 The Diamond Dice Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace diamond::cli {

inline constexpr const char* kBlockBegin = "--- report ---";
inline constexpr const char* kBlockEnd = "--- end report ---";

// Summary of one CLI run. The human listing and the key=value block are
// both rendered from the same entries.
class RunReport {
 public:
  explicit RunReport(std::string title) : title_(std::move(title)) {}

  void add(std::string key, std::string value, std::string label = {}) {
    if (label.empty()) label = key;
    entries_.push_back({std::move(key), std::move(label), std::move(value)});
  }
  void add(std::string key, std::uint64_t value, std::string label = {}) {
    add(std::move(key), std::to_string(value), std::move(label));
  }
  void add_real(std::string key, double value, std::string label = {}) {
    add(std::move(key), format_real(value), std::move(label));
  }

  void print(std::ostream& out) const {
    out << title_ << '\n';
    std::size_t width = 0;
    for (const auto& e : entries_) width = std::max(width, e.label.size());
    for (const auto& e : entries_) {
      out << "  " << e.label << ':' << std::string(width - e.label.size() + 1, ' ') << e.value
          << '\n';
    }
    out << kBlockBegin << '\n';
    for (const auto& e : entries_) out << e.key << '=' << e.value << '\n';
    out << kBlockEnd << '\n';
  }

  // Shortest text that reads back to the same double.
  static std::string format_real(double v) {
    char buf[32];
    if (v == std::floor(v) && std::fabs(v) < 0x1p53) {
      std::snprintf(buf, sizeof buf, "%.0f", v);
      return buf;
    }
    for (int precision = 1; precision <= 17; ++precision) {
      std::snprintf(buf, sizeof buf, "%.*g", precision, v);
      if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
  }

 private:
  struct Entry {
    std::string key;
    std::string label;
    std::string value;
  };
  std::string title_;
  std::vector<Entry> entries_;
};

// Reads the key=value block out of a report; lines outside the markers are
// ignored.
inline std::map<std::string, std::string> parse_report(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  bool inside = false;
  while (std::getline(in, line)) {
    if (line == kBlockBegin) {
      inside = true;
      continue;
    }
    if (line == kBlockEnd) break;
    if (!inside) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

}  // namespace diamond::cli
