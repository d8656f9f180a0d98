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

#include <cstdint>
#include <string>
#include <vector>

#include "cube.hpp"
#include "ingest.hpp"

namespace diamond {

enum class Distribution { kUniform, kPower };

struct SynthSpec {
  Distribution distribution = Distribution::kUniform;
  // Density exponent for kPower; must exceed 1.
  double exponent = 2.0;
  // Nominal cardinality per dimension; the dimension count is its size.
  std::vector<std::uint32_t> cardinalities;
  std::uint64_t draws = 0;
  std::uint64_t seed = 0;

  static SynthSpec uniform(std::size_t dims, std::uint32_t cardinality, std::uint64_t draws,
                           std::uint64_t seed) {
    return {Distribution::kUniform, 0.0, std::vector<std::uint32_t>(dims, cardinality), draws,
            seed};
  }
  static SynthSpec power(double exponent, std::size_t dims, std::uint32_t cardinality,
                         std::uint64_t draws, std::uint64_t seed) {
    return {Distribution::kPower, exponent, std::vector<std::uint32_t>(dims, cardinality), draws,
            seed};
  }
};

// Name of the generator behind every draw, recorded in source_id.
inline constexpr const char* kSynthRng = "mt19937_64";

// Draws `draws` coordinate tuples with i.i.d. coordinates, merges repeated
// tuples into one cell whose measure is the multiplicity, and re-indexes
// each dimension densely over the values actually drawn (ascending). Cells
// keep the order of each tuple's first draw. The dictionary maps dense ids
// back to the drawn value (0-based) as a decimal string.
EncodedTable generate(const SynthSpec& spec);

// One coordinate draw in [0, cardinality); exposed for distribution tests.
std::uint32_t draw_coordinate(const SynthSpec& spec, std::uint32_t cardinality,
                              std::uint64_t random_bits);

}  // namespace diamond
