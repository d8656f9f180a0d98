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

#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "error.hpp"

namespace diamond {

namespace {

void check_spec(const SynthSpec& spec) {
  if (spec.cardinalities.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic cube needs at least one dimension");
  }
  if (spec.cardinalities.size() > 0xffff) {
    throw Error(ErrorCode::kTooLarge, "too many dimensions");
  }
  for (auto n : spec.cardinalities) {
    if (n < 1) throw Error(ErrorCode::kInvalidArgument, "cardinalities must be >= 1");
  }
  if (spec.draws < 1) throw Error(ErrorCode::kInvalidArgument, "draw count must be >= 1");
  if (spec.draws > 0xffffffffull) {
    throw Error(ErrorCode::kTooLarge, "draw count must fit in 32 bits");
  }
  if (spec.distribution == Distribution::kPower && !(spec.exponent > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "power-law exponent must exceed 1");
  }
}

std::string format_exponent(double e) {
  std::string s = std::to_string(e);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

std::uint32_t draw_coordinate(const SynthSpec& spec, std::uint32_t cardinality,
                              std::uint64_t random_bits) {
  if (spec.distribution == Distribution::kUniform) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(random_bits) * cardinality) >> 64);
  }
  // Inverse CDF of density ~ x^-a on [1, n + 1), floored to a rank 1..n.
  const double u = static_cast<double>(random_bits >> 11) * 0x1.0p-53;
  const double one_minus_a = 1.0 - spec.exponent;
  const double tail = std::pow(static_cast<double>(cardinality) + 1.0, one_minus_a);
  const double x = std::pow(1.0 - u * (1.0 - tail), 1.0 / one_minus_a);
  const double rank = std::clamp(std::floor(x), 1.0, static_cast<double>(cardinality));
  return static_cast<std::uint32_t>(rank) - 1;
}

EncodedTable generate(const SynthSpec& spec) {
  check_spec(spec);
  const std::size_t d = spec.cardinalities.size();
  const auto draws = static_cast<std::size_t>(spec.draws);
  std::mt19937_64 rng(spec.seed);

  std::vector<ValueId> raw(draws * d);
  for (std::size_t t = 0; t < draws; ++t) {
    for (std::size_t i = 0; i < d; ++i) {
      raw[t * d + i] = draw_coordinate(spec, spec.cardinalities[i], rng());
    }
  }

  // Group identical tuples; ties keep draw order so each group starts with
  // its first draw.
  std::vector<std::uint32_t> order(draws);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const ValueId* xa = raw.data() + std::size_t{a} * d;
    const ValueId* xb = raw.data() + std::size_t{b} * d;
    for (std::size_t i = 0; i < d; ++i) {
      if (xa[i] != xb[i]) return xa[i] < xb[i];
    }
    return a < b;
  });
  struct Group {
    std::uint32_t first;
    std::uint32_t count;
  };
  std::vector<Group> groups;
  for (std::size_t j = 0; j < draws; ++j) {
    const ValueId* x = raw.data() + std::size_t{order[j]} * d;
    if (j > 0) {
      const ValueId* prev = raw.data() + std::size_t{order[j - 1]} * d;
      if (std::equal(x, x + d, prev)) {
        ++groups.back().count;
        continue;
      }
    }
    groups.push_back({order[j], 1});
  }
  order.clear();
  order.shrink_to_fit();
  std::sort(groups.begin(), groups.end(),
            [](const Group& a, const Group& b) { return a.first < b.first; });

  EncodedTable out;
  Dictionary& dict = out.dictionary;
  std::vector<std::vector<ValueId>> dense(d);
  std::vector<std::uint32_t> cards(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::uint8_t> seen(spec.cardinalities[i], 0);
    for (const auto& g : groups) seen[raw[std::size_t{g.first} * d + i]] = 1;
    dense[i].assign(spec.cardinalities[i], 0);
    dict.dimension_names.push_back("d" + std::to_string(i));
    auto& strings = dict.values.emplace_back();
    for (std::uint32_t v = 0; v < spec.cardinalities[i]; ++v) {
      if (!seen[v]) continue;
      dense[i][v] = cards[i]++;
      strings.push_back(std::to_string(v));
    }
  }
  dict.measure_name = "count";

  std::vector<ValueId> coords;
  coords.reserve(groups.size() * d);
  std::vector<double> measures;
  measures.reserve(groups.size());
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < d; ++i) {
      coords.push_back(dense[i][raw[std::size_t{g.first} * d + i]]);
    }
    measures.push_back(static_cast<double>(g.count));
  }

  std::string source = "synth/";
  source += spec.distribution == Distribution::kUniform
                ? "uniform"
                : "pow:" + format_exponent(spec.exponent);
  source += "/d=" + std::to_string(d) + "/n=";
  for (std::size_t i = 0; i < d; ++i) {
    if (i) source += 'x';
    source += std::to_string(spec.cardinalities[i]);
  }
  source += "/draws=" + std::to_string(spec.draws) + "/seed=" + std::to_string(spec.seed) +
            "/rng=" + kSynthRng;
  out.cube = EncodedCube(std::move(cards), std::move(coords), std::move(measures),
                         std::move(source));
  return out;
}

}  // namespace diamond
