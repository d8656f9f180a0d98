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
#include <filesystem>
#include <limits>
#include <optional>
#include <vector>

#include "cube.hpp"

namespace diamond {

struct DiceOutcome {
  // Values that occur in at least one retained cell, ascending per dimension.
  std::vector<std::vector<ValueId>> retained_values;
  // Surviving cells with their original ids, in input order. Cardinalities
  // are those of the input cube.
  EncodedCube retained_cells;
  // Full sweeps over the data, counting the final sweep that deletes nothing.
  std::size_t major_iterations = 0;
  // final_slice_aggregates[i][j] is the aggregate of retained_values[i][j].
  std::vector<std::vector<double>> final_slice_aggregates;
  std::uint64_t deleted_cell_count = 0;
  // Cells still present after each major iteration.
  std::vector<std::uint64_t> cells_after_iteration;
  std::size_t compactions = 0;

  bool empty() const noexcept { return retained_cells.empty(); }
  std::vector<std::size_t> shape() const;
  // Smallest retained slice aggregate; +inf for an empty diamond.
  double min_slice_aggregate() const noexcept;
};

struct DicerConfig {
  // Fraction of logically deleted cells that triggers a rewrite, in [0, 1).
  double compaction_threshold = 0.5;
  // Dimensions in index order and values in ascending id. When false the
  // dimension and value visiting orders are shuffled with order_seed.
  bool canonical_order = true;
  std::uint64_t order_seed = 0;
  // Explicit dimension visiting order; overrides canonical_order for
  // dimensions when non-empty.
  std::vector<std::size_t> dimension_order;
  // Scratch space for file-backed compaction; the system temp directory
  // when empty.
  std::filesystem::path work_directory;
};

// Eager slice deletion over an in-memory cube, with per-value cell lists.
DiceOutcome dice_basic(const EncodedCube& cube, const CaratSpec& spec,
                       const DicerConfig& config = {});

// Mark-and-compact dicing over a cell list: per-dimension aggregate arrays
// are decremented as cells die, and the list is rewritten once the deleted
// fraction exceeds the compaction threshold.
DiceOutcome dice_compacting(const EncodedCube& cube, const CaratSpec& spec,
                            const DicerConfig& config = {});

// Same algorithm streaming over a binary cube file, which is never modified.
// Only the aggregate arrays and a deletion bitmap are held in memory until
// the surviving cells are loaded at the end.
DiceOutcome dice_compacting_file(const std::filesystem::path& path,
                                 const CaratSpec& spec,
                                 const DicerConfig& config = {});

// True iff every value id of every dimension meets its threshold.
bool check_carats(const EncodedCube& cube, const CaratSpec& spec);

// Builds the outcome fields derived from a surviving cell set (retained
// values and their final aggregates); iteration counters are left at zero.
DiceOutcome outcome_from_cells(EncodedCube cells, Aggregator agg);

// A cube re-indexed so that only ids occurring in cells remain, densely.
struct DenseSubcube {
  EncodedCube cube;
  std::vector<std::vector<ValueId>> original_ids;
};

DenseSubcube reindex_dense(const EncodedCube& cube);

}  // namespace diamond
