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
#include <vector>

#include "cube.hpp"
#include "dicer.hpp"

namespace diamond {

// Largest total of per-dimension value counts the enumeration accepts;
// the search visits 2^(sum n_i) subcubes.
inline constexpr std::size_t kMaxEnumerableValues = 24;

// One chosen value subset per dimension, as bit masks over value ids.
using SubcubeMask = std::vector<std::uint32_t>;

// Every subcube (choice of value subsets) whose chosen slices all meet
// their thresholds.
std::vector<SubcubeMask> satisfying_subcubes(const EncodedCube& cube, const CaratSpec& spec);

// True when the subcube selected by `mask` has the carats of `spec`.
bool subcube_has_carats(const EncodedCube& cube, const CaratSpec& spec, const SubcubeMask& mask);

// The diamond as the union of all satisfying subcubes. Exponential; throws
// kTooLarge past kMaxEnumerableValues. major_iterations is 0.
DiceOutcome brute_force_diamond(const EncodedCube& cube, const CaratSpec& spec);

}  // namespace diamond
