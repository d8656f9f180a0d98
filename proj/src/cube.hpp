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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace diamond {

using ValueId = std::uint32_t;

enum class Aggregator { kCount, kSum };

const char* aggregator_name(Aggregator agg) noexcept;

// One allocated cell. Unallocated cells are never represented.
struct FactCell {
  std::vector<ValueId> coords;
  double measure = 0.0;

  friend bool operator==(const FactCell&, const FactCell&) = default;
};

// Sparse fact table over dictionary-encoded dimensions. Cells are stored
// row-major in one flat coordinate array so that tens of millions of cells
// fit comfortably in memory.
class EncodedCube {
 public:
  EncodedCube() = default;

  // Throws kInvalidArgument when `coords` is not `measures.size() * d` long.
  // Semantic invariants (ranges, duplicates, finiteness) are checked by
  // validate(), not here.
  EncodedCube(std::vector<std::uint32_t> cardinalities,
              std::vector<ValueId> coords, std::vector<double> measures,
              std::string source_id = {});

  static EncodedCube from_cells(std::vector<std::uint32_t> cardinalities,
                                std::span<const FactCell> cells,
                                std::string source_id = {});

  std::size_t dim_count() const noexcept { return cardinalities_.size(); }
  std::size_t cell_count() const noexcept { return measures_.size(); }
  bool empty() const noexcept { return measures_.empty(); }

  std::span<const std::uint32_t> cardinalities() const noexcept {
    return cardinalities_;
  }
  std::uint32_t cardinality(std::size_t dim) const {
    return cardinalities_.at(dim);
  }

  std::span<const ValueId> coords(std::size_t cell) const noexcept {
    return {coords_.data() + cell * dim_count(), dim_count()};
  }
  ValueId coord(std::size_t cell, std::size_t dim) const noexcept {
    return coords_[cell * dim_count() + dim];
  }
  double measure(std::size_t cell) const noexcept { return measures_[cell]; }
  FactCell cell(std::size_t cell) const;

  std::span<const ValueId> flat_coords() const noexcept { return coords_; }
  std::span<const double> measures() const noexcept { return measures_; }

  const std::string& source_id() const noexcept { return source_id_; }

  // Cached at construction.
  bool measures_non_negative() const noexcept { return non_negative_; }
  // True when every measure is a whole number and all partial sums stay
  // exactly representable, so SUM arithmetic never rounds.
  bool measures_integral() const noexcept { return integral_; }

  // Compares dimensions and cells in order; source_id is provenance only.
  bool operator==(const EncodedCube& other) const noexcept {
    return cardinalities_ == other.cardinalities_ && coords_ == other.coords_ &&
           measures_ == other.measures_;
  }

 private:
  std::vector<std::uint32_t> cardinalities_;
  std::vector<ValueId> coords_;
  std::vector<double> measures_;
  std::string source_id_;
  bool non_negative_ = true;
  bool integral_ = true;
};

struct CaratSpec {
  Aggregator aggregator = Aggregator::kCount;
  std::vector<double> thresholds;

  static CaratSpec uniform(Aggregator agg, std::size_t dims, double k) {
    return {agg, std::vector<double>(dims, k)};
  }
};

// Throws kDimensionMismatch, kInvalidArgument (negative or non-finite
// threshold, fractional COUNT threshold) or kNonMonotone (SUM over a cube
// holding a negative measure).
void check_spec(const EncodedCube& cube, const CaratSpec& spec);

struct CubeStats {
  std::uint64_t cell_count = 0;
  std::uint64_t cardinality_sum = 0;
  double volume = 0.0;  // saturates at +inf
  double density = 0.0;
  double measure_sum = 0.0;
  double measure_max = 0.0;
};

CubeStats cube_stats(const EncodedCube& cube);

double slice_aggregate(const EncodedCube& cube, std::size_t dim, ValueId value,
                       Aggregator agg);

// Aggregate of every slice of `dim` in one pass over the cells, indexed by
// value id. Cells are accumulated in storage order.
std::vector<double> slice_aggregates(const EncodedCube& cube, std::size_t dim,
                                     Aggregator agg);

// Number of value ids per dimension that occur in at least one cell.
std::vector<std::uint32_t> realized_cardinalities(const EncodedCube& cube);

std::vector<std::string> diagnose(const EncodedCube& cube);

// Throws kInvalidCube listing every diagnostic when the cube is malformed.
void validate(const EncodedCube& cube);

}  // namespace diamond
