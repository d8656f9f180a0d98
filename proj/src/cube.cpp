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

#include "cube.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace diamond {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kNonMonotone: return "non-monotone-aggregator";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kInvalidCube: return "invalid-cube";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kDuplicate: return "duplicate";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kBadMagic: return "bad-magic";
    case ErrorCode::kVersionMismatch: return "version-mismatch";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kChecksumMismatch: return "checksum-mismatch";
    case ErrorCode::kUndefinedBound: return "undefined-bound";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kTooLarge: return "too-large";
    case ErrorCode::kEmptyCube: return "empty-cube";
  }
  return "unknown";
}

const char* aggregator_name(Aggregator agg) noexcept {
  return agg == Aggregator::kCount ? "count" : "sum";
}

EncodedCube::EncodedCube(std::vector<std::uint32_t> cardinalities,
                         std::vector<ValueId> coords,
                         std::vector<double> measures, std::string source_id)
    : cardinalities_(std::move(cardinalities)),
      coords_(std::move(coords)),
      measures_(std::move(measures)),
      source_id_(std::move(source_id)) {
  if (coords_.size() != measures_.size() * cardinalities_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "coordinate array holds " + std::to_string(coords_.size()) +
                    " ids, expected " +
                    std::to_string(measures_.size() * cardinalities_.size()));
  }
  if (cardinalities_.empty() && !measures_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cells need at least one dimension");
  }
  constexpr double kExactLimit = 9007199254740992.0;  // 2^53
  double abs_total = 0.0;
  for (double m : measures_) {
    if (m < 0.0) non_negative_ = false;
    if (!std::isfinite(m) || m != std::floor(m)) integral_ = false;
    abs_total += std::fabs(m);
  }
  if (!(abs_total < kExactLimit)) integral_ = false;
}

EncodedCube EncodedCube::from_cells(std::vector<std::uint32_t> cardinalities,
                                    std::span<const FactCell> cells,
                                    std::string source_id) {
  const std::size_t d = cardinalities.size();
  std::vector<ValueId> coords;
  coords.reserve(cells.size() * d);
  std::vector<double> measures;
  measures.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].coords.size() != d) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "cell " + std::to_string(i) + " has " +
                      std::to_string(cells[i].coords.size()) +
                      " coordinates, cube has " + std::to_string(d));
    }
    coords.insert(coords.end(), cells[i].coords.begin(), cells[i].coords.end());
    measures.push_back(cells[i].measure);
  }
  return EncodedCube(std::move(cardinalities), std::move(coords),
                     std::move(measures), std::move(source_id));
}

FactCell EncodedCube::cell(std::size_t cell) const {
  auto c = coords(cell);
  return FactCell{{c.begin(), c.end()}, measures_[cell]};
}

void check_spec(const EncodedCube& cube, const CaratSpec& spec) {
  if (spec.thresholds.size() != cube.dim_count()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "carat spec has " + std::to_string(spec.thresholds.size()) +
                    " thresholds but the cube has " +
                    std::to_string(cube.dim_count()) + " dimensions");
  }
  for (std::size_t i = 0; i < spec.thresholds.size(); ++i) {
    const double k = spec.thresholds[i];
    if (!std::isfinite(k) || k < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "threshold " + std::to_string(i) + " must be finite and >= 0");
    }
    if (spec.aggregator == Aggregator::kCount && k != std::floor(k)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "COUNT threshold " + std::to_string(i) + " must be an integer");
    }
  }
  if (spec.aggregator == Aggregator::kSum && !cube.measures_non_negative()) {
    throw Error(ErrorCode::kNonMonotone,
                "SUM is not monotone over negative measures; the diamond is "
                "not unique for this cube");
  }
}

CubeStats cube_stats(const EncodedCube& cube) {
  CubeStats s;
  s.cell_count = cube.cell_count();
  double volume = cube.dim_count() == 0 ? 0.0 : 1.0;
  for (auto n : cube.cardinalities()) {
    s.cardinality_sum += n;
    volume *= static_cast<double>(n);
  }
  s.volume = volume;
  s.density = volume > 0.0 ? static_cast<double>(s.cell_count) / volume : 0.0;
  for (double m : cube.measures()) {
    s.measure_sum += m;
  }
  if (!cube.empty()) {
    s.measure_max = *std::max_element(cube.measures().begin(), cube.measures().end());
  }
  return s;
}

namespace {

void check_dim(const EncodedCube& cube, std::size_t dim) {
  if (dim >= cube.dim_count()) {
    throw Error(ErrorCode::kOutOfRange,
                "dimension " + std::to_string(dim) + " out of range [0, " +
                    std::to_string(cube.dim_count()) + ")");
  }
}

void check_aggregator(const EncodedCube& cube, Aggregator agg) {
  if (agg == Aggregator::kSum && !cube.measures_non_negative()) {
    throw Error(ErrorCode::kNonMonotone,
                "SUM slice aggregates require non-negative measures");
  }
}

}  // namespace

double slice_aggregate(const EncodedCube& cube, std::size_t dim, ValueId value,
                       Aggregator agg) {
  check_dim(cube, dim);
  if (value >= cube.cardinality(dim)) {
    throw Error(ErrorCode::kOutOfRange,
                "value " + std::to_string(value) + " out of range for dimension " +
                    std::to_string(dim));
  }
  check_aggregator(cube, agg);
  double total = 0.0;
  for (std::size_t c = 0; c < cube.cell_count(); ++c) {
    if (cube.coord(c, dim) == value) {
      total += agg == Aggregator::kCount ? 1.0 : cube.measure(c);
    }
  }
  return total;
}

std::vector<double> slice_aggregates(const EncodedCube& cube, std::size_t dim,
                                     Aggregator agg) {
  check_dim(cube, dim);
  check_aggregator(cube, agg);
  std::vector<double> out(cube.cardinality(dim), 0.0);
  for (std::size_t c = 0; c < cube.cell_count(); ++c) {
    const ValueId v = cube.coord(c, dim);
    if (v < out.size()) out[v] += agg == Aggregator::kCount ? 1.0 : cube.measure(c);
  }
  return out;
}

std::vector<std::uint32_t> realized_cardinalities(const EncodedCube& cube) {
  std::vector<std::uint32_t> out(cube.dim_count(), 0);
  for (std::size_t dim = 0; dim < cube.dim_count(); ++dim) {
    std::vector<bool> seen(cube.cardinality(dim), false);
    for (std::size_t c = 0; c < cube.cell_count(); ++c) {
      const ValueId v = cube.coord(c, dim);
      if (v < seen.size() && !seen[v]) {
        seen[v] = true;
        ++out[dim];
      }
    }
  }
  return out;
}

std::vector<std::string> diagnose(const EncodedCube& cube) {
  std::vector<std::string> problems;
  const std::size_t d = cube.dim_count();
  for (std::size_t c = 0; c < cube.cell_count(); ++c) {
    for (std::size_t i = 0; i < d; ++i) {
      if (cube.coord(c, i) >= cube.cardinality(i)) {
        problems.push_back("range: cell " + std::to_string(c) + " has id " +
                           std::to_string(cube.coord(c, i)) + " in dimension " +
                           std::to_string(i) + " (cardinality " +
                           std::to_string(cube.cardinality(i)) + ")");
      }
    }
    if (!std::isfinite(cube.measure(c))) {
      problems.push_back("measure: cell " + std::to_string(c) +
                         " has a non-finite measure");
    }
  }
  std::vector<std::size_t> order(cube.cell_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto less = [&](std::size_t a, std::size_t b) {
    auto ca = cube.coords(a);
    auto cb = cube.coords(b);
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
  };
  std::stable_sort(order.begin(), order.end(), less);
  for (std::size_t j = 1; j < order.size(); ++j) {
    auto a = cube.coords(order[j - 1]);
    auto b = cube.coords(order[j]);
    if (std::equal(a.begin(), a.end(), b.begin())) {
      problems.push_back("duplicate: cells " + std::to_string(order[j - 1]) +
                         " and " + std::to_string(order[j]) +
                         " share coordinates");
    }
  }
  return problems;
}

void validate(const EncodedCube& cube) {
  auto problems = diagnose(cube);
  if (problems.empty()) return;
  constexpr std::size_t kShown = 20;
  std::ostringstream msg;
  msg << problems.size() << " invariant violation(s)";
  for (std::size_t i = 0; i < problems.size() && i < kShown; ++i) {
    msg << "\n  " << problems[i];
  }
  if (problems.size() > kShown) msg << "\n  ... " << problems.size() - kShown << " more";
  throw Error(ErrorCode::kInvalidCube, msg.str());
}

}  // namespace diamond
