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

#include "oracle.hpp"

#include <string>

#include "error.hpp"

namespace diamond {

namespace {

void check_enumerable(const EncodedCube& cube) {
  std::size_t total = 0;
  for (auto n : cube.cardinalities()) total += n;
  if (total > kMaxEnumerableValues) {
    throw Error(ErrorCode::kTooLarge, "brute force needs sum of cardinalities <= " +
                                          std::to_string(kMaxEnumerableValues) + ", got " +
                                          std::to_string(total));
  }
}

bool inside(const EncodedCube& cube, std::size_t c, const SubcubeMask& mask) {
  for (std::size_t i = 0; i < cube.dim_count(); ++i) {
    if (!(mask[i] >> cube.coord(c, i) & 1u)) return false;
  }
  return true;
}

// Cells of the selected subcube, re-indexed so that the chosen values of
// dimension i become ids 0..popcount(mask[i]) - 1.
EncodedCube induced_subcube(const EncodedCube& cube, const SubcubeMask& mask) {
  const std::size_t d = cube.dim_count();
  std::vector<std::vector<ValueId>> remap(d);
  std::vector<std::uint32_t> cards(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    remap[i].assign(cube.cardinality(i), 0);
    for (ValueId v = 0; v < cube.cardinality(i); ++v) {
      if (mask[i] >> v & 1u) remap[i][v] = cards[i]++;
    }
  }
  std::vector<ValueId> coords;
  std::vector<double> measures;
  for (std::size_t c = 0; c < cube.cell_count(); ++c) {
    if (!inside(cube, c, mask)) continue;
    for (std::size_t i = 0; i < d; ++i) coords.push_back(remap[i][cube.coord(c, i)]);
    measures.push_back(cube.measure(c));
  }
  return EncodedCube(std::move(cards), std::move(coords), std::move(measures));
}

template <class F>
void for_each_subcube(const EncodedCube& cube, F&& f) {
  const std::size_t d = cube.dim_count();
  SubcubeMask mask(d, 0);
  for (;;) {
    f(mask);
    std::size_t i = 0;
    for (; i < d; ++i) {
      const std::uint32_t limit = (1u << cube.cardinality(i)) - 1u;
      if (mask[i] < limit) {
        ++mask[i];
        break;
      }
      mask[i] = 0;
    }
    if (i == d) return;
  }
}

}  // namespace

bool subcube_has_carats(const EncodedCube& cube, const CaratSpec& spec, const SubcubeMask& mask) {
  return check_carats(induced_subcube(cube, mask), spec);
}

std::vector<SubcubeMask> satisfying_subcubes(const EncodedCube& cube, const CaratSpec& spec) {
  check_spec(cube, spec);
  check_enumerable(cube);
  std::vector<SubcubeMask> out;
  if (cube.dim_count() == 0) return out;
  for_each_subcube(cube, [&](const SubcubeMask& mask) {
    if (subcube_has_carats(cube, spec, mask)) out.push_back(mask);
  });
  return out;
}

DiceOutcome brute_force_diamond(const EncodedCube& cube, const CaratSpec& spec) {
  const std::size_t d = cube.dim_count();
  SubcubeMask all(d, 0);
  for (const auto& mask : satisfying_subcubes(cube, spec)) {
    for (std::size_t i = 0; i < d; ++i) all[i] |= mask[i];
  }
  std::vector<ValueId> coords;
  std::vector<double> measures;
  for (std::size_t c = 0; c < cube.cell_count(); ++c) {
    if (!inside(cube, c, all)) continue;
    auto x = cube.coords(c);
    coords.insert(coords.end(), x.begin(), x.end());
    measures.push_back(cube.measure(c));
  }
  DiceOutcome out = outcome_from_cells(
      EncodedCube({cube.cardinalities().begin(), cube.cardinalities().end()}, std::move(coords),
                  std::move(measures), cube.source_id()),
      spec.aggregator);
  out.deleted_cell_count = cube.cell_count() - out.retained_cells.cell_count();
  return out;
}

}  // namespace diamond
