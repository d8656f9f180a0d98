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
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cube.hpp"
#include "dicer.hpp"
#include "ingest.hpp"
#include "sample_data.hpp"

namespace diamond::testing {

// Products by cities, as tabulated in the sales example.
inline EncodedTable encode_string(const std::string& text, IngestConfig config) {
  std::istringstream in(text);
  return encode_text(in, config, "test");
}

inline EncodedTable sales() {
  IngestConfig config;
  config.has_header = true;
  config.measure_column = 2;
  return encode_string(sales_csv(), config);
}

inline EncodedTable tiny9() {
  IngestConfig config;
  config.has_header = true;
  return encode_string(kTiny9Csv, config);
}

// Cells rendered through the dictionary, e.g. "Phone|Montreal".
inline std::set<std::string> cell_names(const EncodedCube& cells, const Dictionary& dict) {
  std::set<std::string> out;
  for (std::size_t c = 0; c < cells.cell_count(); ++c) {
    std::string name;
    for (std::size_t i = 0; i < cells.dim_count(); ++i) {
      if (i) name += '|';
      name += dict.values[i][cells.coord(c, i)];
    }
    out.insert(name);
  }
  return out;
}

inline std::set<std::string> cross(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
  std::set<std::string> out;
  for (const auto& x : a) {
    for (const auto& y : b) out.insert(x + "|" + y);
  }
  return out;
}

inline std::set<std::string> value_names(const DiceOutcome& o, const Dictionary& dict,
                                         std::size_t dim) {
  std::set<std::string> out;
  for (auto v : o.retained_values[dim]) out.insert(dict.values[dim][v]);
  return out;
}

// Order-free view of a cell list.
using CellKey = std::tuple<std::vector<ValueId>, double>;

inline std::vector<CellKey> cell_keys(const EncodedCube& cube) {
  std::vector<CellKey> out;
  for (std::size_t c = 0; c < cube.cell_count(); ++c) {
    auto x = cube.coords(c);
    out.emplace_back(std::vector<ValueId>(x.begin(), x.end()), cube.measure(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline EncodedCube grid_cube(std::vector<std::uint32_t> cards,
                             const std::vector<std::pair<ValueId, ValueId>>& cells) {
  std::vector<ValueId> coords;
  for (auto [r, c] : cells) {
    coords.push_back(r);
    coords.push_back(c);
  }
  return EncodedCube(std::move(cards), std::move(coords), std::vector<double>(cells.size(), 1.0),
                     "grid");
}

// Rows 1 and 2 hold columns 1 and 2; row r >= 3 holds columns r - 1 and r.
// With k = 2 only the top-left 2x2 block survives, one row per sweep.
inline EncodedCube staircase(std::uint32_t n) {
  std::vector<std::pair<ValueId, ValueId>> cells;
  for (std::uint32_t r = 1; r <= n; ++r) {
    const std::uint32_t c = r <= 2 ? 1 : r - 1;
    cells.push_back({r - 1, c - 1});
    cells.push_back({r - 1, c});
  }
  return grid_cube({n, n}, cells);
}

// A full 3x3 block, two rows on columns 3 and 4, then a two-wide staircase
// of `tail` rows that ends in a single cell. Dimension 0 is the column.
inline EncodedCube nonbitonic(std::uint32_t tail) {
  std::vector<std::pair<ValueId, ValueId>> rc;
  for (ValueId r = 0; r < 3; ++r) {
    for (ValueId c = 0; c < 3; ++c) rc.push_back({r, c});
  }
  rc.push_back({3, 2});
  rc.push_back({3, 3});
  rc.push_back({4, 2});
  rc.push_back({4, 3});
  ValueId row = 5;
  for (std::uint32_t t = 0; t < tail; ++t, ++row) {
    rc.push_back({row, 3 + t});
    rc.push_back({row, 4 + t});
  }
  rc.push_back({row, 3 + tail});
  std::uint32_t cols = 0;
  for (auto& [r, c] : rc) {
    cols = std::max(cols, c + 1);
    std::swap(r, c);
  }
  return grid_cube({cols, row + 1}, rc);
}

// Four rows by six columns with mixed-sign measures.
inline EncodedCube mixed_sign() {
  const double m[4][6] = {
      {-5, 1, 1, 1, 0, 3}, {-3, -4, 1, 0, 1, 0}, {2, 2, 4, 0, 2, 1}, {0, 2, 3, 1, 0, 0}};
  std::vector<ValueId> coords;
  std::vector<double> measures;
  for (ValueId r = 0; r < 4; ++r) {
    for (ValueId c = 0; c < 6; ++c) {
      coords.push_back(r);
      coords.push_back(c);
      measures.push_back(m[r][c]);
    }
  }
  return EncodedCube({4, 6}, std::move(coords), std::move(measures), "mixed");
}

struct RandomCubeShape {
  std::size_t min_dims = 2;
  std::size_t max_dims = 3;
  std::uint32_t max_cardinality = 4;
  std::size_t max_cells = 14;
  int max_measure = 9;
};

// Distinct random cells, re-indexed so every id occurs. At least one cell.
inline EncodedCube random_cube(std::mt19937_64& rng, const RandomCubeShape& shape = {}) {
  std::uniform_int_distribution<std::size_t> dims(shape.min_dims, shape.max_dims);
  const std::size_t d = dims(rng);
  std::vector<std::uint32_t> cards(d);
  std::uniform_int_distribution<std::uint32_t> card(1, shape.max_cardinality);
  double volume = 1;
  for (auto& n : cards) {
    n = card(rng);
    volume *= n;
  }
  const std::size_t limit =
      std::min<std::size_t>(shape.max_cells, static_cast<std::size_t>(volume));
  const std::size_t target = std::uniform_int_distribution<std::size_t>(1, limit)(rng);
  std::set<std::vector<ValueId>> seen;
  std::vector<ValueId> coords;
  std::vector<double> measures;
  std::uniform_int_distribution<int> measure(0, shape.max_measure);
  while (seen.size() < target) {
    std::vector<ValueId> x(d);
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = std::uniform_int_distribution<ValueId>(0, cards[i] - 1)(rng);
    }
    if (!seen.insert(x).second) continue;
    coords.insert(coords.end(), x.begin(), x.end());
    measures.push_back(measure(rng));
  }
  return reindex_dense(EncodedCube(cards, std::move(coords), std::move(measures), "random")).cube;
}

inline std::vector<double> random_carats(std::mt19937_64& rng, std::size_t d, int max_k) {
  std::vector<double> k(d);
  for (auto& x : k) x = std::uniform_int_distribution<int>(0, max_k)(rng);
  return k;
}

// Largest uniform threshold some non-empty subcube meets in every chosen
// slice, by enumerating all value subsets. Tiny cubes only.
inline double brute_force_kappa(const EncodedCube& cube, Aggregator agg) {
  const std::size_t d = cube.dim_count();
  std::vector<std::uint32_t> mask(d, 1);
  double best = 0;
  while (true) {
    std::vector<std::vector<double>> sums(d);
    for (std::size_t i = 0; i < d; ++i) sums[i].assign(cube.cardinality(i), 0.0);
    std::size_t cells = 0;
    for (std::size_t c = 0; c < cube.cell_count(); ++c) {
      bool inside = true;
      for (std::size_t i = 0; i < d && inside; ++i) inside = (mask[i] >> cube.coord(c, i)) & 1u;
      if (!inside) continue;
      ++cells;
      const double w = agg == Aggregator::kCount ? 1.0 : cube.measure(c);
      for (std::size_t i = 0; i < d; ++i) sums[i][cube.coord(c, i)] += w;
    }
    if (cells > 0) {
      double low = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < d; ++i) {
        for (std::uint32_t v = 0; v < cube.cardinality(i); ++v) {
          if ((mask[i] >> v) & 1u) low = std::min(low, sums[i][v]);
        }
      }
      best = std::max(best, low);
    }
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (++mask[i] < (1u << cube.cardinality(i))) break;
      mask[i] = 1;
    }
    if (i == d) break;
  }
  return best;
}

}  // namespace diamond::testing
