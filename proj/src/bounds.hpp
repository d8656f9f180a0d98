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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cube.hpp"
#include "dicer.hpp"

namespace diamond {

enum class BoundKind {
  kCountKappaLower,         // kappa >= |C| / sum(n_i - 1) - 3
  kCountCaratUpper,         // carats <= min(prod of all but one n_i, |C|)
  kMinSizeForCarats,        // |C| >= (prod k_i)^(1/(d-1))
  kMaxCellsWithoutDiamond,  // 1 + sum (k_i - 1)(n_i - 1) for equal carats
  kSumKappaLower,           // largest cell
  kSumKappaUpper,           // min over dims of the largest slice sum
  kSumLowerBoundOfDiamond,  // k * max s_i
};

const char* bound_kind_name(BoundKind kind) noexcept;
bool is_lower_bound(BoundKind kind) noexcept;

struct BoundReport {
  BoundKind kind;
  double value = 0.0;
  std::uint64_t cell_count = 0;
  std::vector<std::uint32_t> cardinalities;
  std::vector<double> thresholds;
};

// floor(|C| / sum(n_i - 1) - 3), clamped at 0. Throws kUndefinedBound when
// every n_i is 1.
std::int64_t count_kappa_lower(std::uint64_t cell_count, std::uint64_t cardinality_sum,
                               std::size_t dim_count);
std::int64_t count_kappa_lower(const CubeStats& stats,
                               std::span<const std::uint32_t> cardinalities);

// With `dim`, the product skips that dimension; otherwise it skips the
// largest one. Products saturate at +inf.
double count_carat_upper(std::span<const std::uint32_t> cardinalities,
                         std::uint64_t cell_count,
                         std::optional<std::size_t> dim = std::nullopt);

// Throws kUndefinedBound for d = 1.
double min_size_for_carats(std::span<const double> thresholds);

// 1 + sum (k_i - 1)(n_i - 1) when every k_i is equal. Mixed carats add
// k_max - 1 instead of 1, since the uniform argument does not carry over.
// Throws kDomain when any threshold is below 1, kDimensionMismatch when the
// arities differ.
double max_cells_without_diamond(std::span<const double> thresholds,
                                 std::span<const std::uint32_t> cardinalities);
bool guarantees_nonempty(std::uint64_t cell_count, std::span<const double> thresholds,
                         std::span<const std::uint32_t> cardinalities);

// Both throw kEmptyCube or kNonMonotone.
double sum_kappa_lower(const EncodedCube& cube);
double sum_kappa_upper(const EncodedCube& cube);

double sum_lower_bound_of_diamond(const DiceOutcome& outcome, double k);

// Every bound that applies to `cube`. The carat-dependent ones need
// `thresholds`.
std::vector<BoundReport> all_bounds(const EncodedCube& cube,
                                    std::span<const double> thresholds = {});

}  // namespace diamond
