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

#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace diamond {

const char* bound_kind_name(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::kCountKappaLower: return "count_kappa_lower";
    case BoundKind::kCountCaratUpper: return "count_carat_upper";
    case BoundKind::kMinSizeForCarats: return "min_size_for_carats";
    case BoundKind::kMaxCellsWithoutDiamond: return "max_cells_without_diamond";
    case BoundKind::kSumKappaLower: return "sum_kappa_lower";
    case BoundKind::kSumKappaUpper: return "sum_kappa_upper";
    case BoundKind::kSumLowerBoundOfDiamond: return "sum_lower_bound_of_diamond";
  }
  return "unknown";
}

bool is_lower_bound(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::kCountKappaLower:
    case BoundKind::kMinSizeForCarats:
    case BoundKind::kSumKappaLower:
    case BoundKind::kSumLowerBoundOfDiamond:
      return true;
    default:
      return false;
  }
}

std::int64_t count_kappa_lower(std::uint64_t cell_count, std::uint64_t cardinality_sum,
                               std::size_t dim_count) {
  if (cardinality_sum <= dim_count) {
    throw Error(ErrorCode::kUndefinedBound,
                "count kappa bound undefined: every dimension has a single value");
  }
  const double denom = static_cast<double>(cardinality_sum - dim_count);
  const double bound = std::floor(static_cast<double>(cell_count) / denom - 3.0);
  return bound < 0.0 ? 0 : static_cast<std::int64_t>(bound);
}

std::int64_t count_kappa_lower(const CubeStats& stats,
                               std::span<const std::uint32_t> cardinalities) {
  return count_kappa_lower(stats.cell_count, stats.cardinality_sum, cardinalities.size());
}

double count_carat_upper(std::span<const std::uint32_t> cardinalities, std::uint64_t cell_count,
                         std::optional<std::size_t> dim) {
  if (cardinalities.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "carat upper bound needs at least one dimension");
  }
  std::size_t skip = 0;
  if (dim) {
    if (*dim >= cardinalities.size()) {
      throw Error(ErrorCode::kOutOfRange, "dimension " + std::to_string(*dim) + " out of range");
    }
    skip = *dim;
  } else {
    skip = static_cast<std::size_t>(
        std::max_element(cardinalities.begin(), cardinalities.end()) - cardinalities.begin());
  }
  double product = 1.0;
  for (std::size_t i = 0; i < cardinalities.size(); ++i) {
    if (i != skip) product *= static_cast<double>(cardinalities[i]);
  }
  return std::min(product, static_cast<double>(cell_count));
}

double min_size_for_carats(std::span<const double> thresholds) {
  const std::size_t d = thresholds.size();
  if (d <= 1) {
    throw Error(ErrorCode::kUndefinedBound, "size bound needs more than one dimension");
  }
  double product = 1.0;
  double log_sum = 0.0;
  for (double k : thresholds) {
    if (k < 0.0) throw Error(ErrorCode::kDomain, "thresholds must be >= 0");
    if (k == 0.0) return 0.0;
    product *= k;
    log_sum += std::log(k);
  }
  const double exponent = 1.0 / static_cast<double>(d - 1);
  return std::isfinite(product) ? std::pow(product, exponent) : std::exp(log_sum * exponent);
}

double max_cells_without_diamond(std::span<const double> thresholds,
                                 std::span<const std::uint32_t> cardinalities) {
  if (thresholds.size() != cardinalities.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "thresholds and cardinalities differ in arity");
  }
  double total = 0.0;
  double k_max = 1.0;
  bool uniform = true;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 1.0)) {
      throw Error(ErrorCode::kDomain, "every threshold must be at least 1");
    }
    uniform = uniform && thresholds[i] == thresholds[0];
    k_max = std::max(k_max, thresholds[i]);
    total += (thresholds[i] - 1.0) * (static_cast<double>(cardinalities[i]) - 1.0);
  }
  // Peeling failing slices empties the cube after at most n_i - 1 removals
  // per dimension plus one last removal of at most k_j - 1 cells. With equal
  // carats that last slice holds a single cell; otherwise it can hold up to
  // k_max - 1 (a full 4x2 grid has no (3,1) diamond yet 8 > 1 + 2*3).
  return total + (uniform ? 1.0 : k_max - 1.0);
}

bool guarantees_nonempty(std::uint64_t cell_count, std::span<const double> thresholds,
                         std::span<const std::uint32_t> cardinalities) {
  return static_cast<double>(cell_count) > max_cells_without_diamond(thresholds, cardinalities);
}

namespace {

void require_sum_domain(const EncodedCube& cube) {
  if (cube.empty()) throw Error(ErrorCode::kEmptyCube, "SUM bounds need a non-empty cube");
  if (!cube.measures_non_negative()) {
    throw Error(ErrorCode::kNonMonotone, "SUM bounds need non-negative measures");
  }
}

}  // namespace

double sum_kappa_lower(const EncodedCube& cube) {
  require_sum_domain(cube);
  return *std::max_element(cube.measures().begin(), cube.measures().end());
}

double sum_kappa_upper(const EncodedCube& cube) {
  require_sum_domain(cube);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cube.dim_count(); ++i) {
    const auto sums = slice_aggregates(cube, i, Aggregator::kSum);
    best = std::min(best, *std::max_element(sums.begin(), sums.end()));
  }
  return best;
}

double sum_lower_bound_of_diamond(const DiceOutcome& outcome, double k) {
  if (outcome.empty()) return 0.0;
  std::size_t widest = 0;
  for (const auto& vals : outcome.retained_values) widest = std::max(widest, vals.size());
  return k * static_cast<double>(widest);
}

std::vector<BoundReport> all_bounds(const EncodedCube& cube, std::span<const double> thresholds) {
  std::vector<BoundReport> out;
  const auto stats = cube_stats(cube);
  const auto cards = realized_cardinalities(cube);
  auto report = [&](BoundKind kind, double value) {
    BoundReport r{kind, value, stats.cell_count, cards, {thresholds.begin(), thresholds.end()}};
    out.push_back(std::move(r));
  };
  std::uint64_t card_sum = 0;
  for (auto n : cards) card_sum += n;
  if (card_sum > cards.size()) {
    report(BoundKind::kCountKappaLower,
           static_cast<double>(count_kappa_lower(stats.cell_count, card_sum, cards.size())));
  }
  if (!cards.empty()) {
    report(BoundKind::kCountCaratUpper, count_carat_upper(cards, stats.cell_count));
  }
  if (!cube.empty() && cube.measures_non_negative()) {
    report(BoundKind::kSumKappaLower, sum_kappa_lower(cube));
    report(BoundKind::kSumKappaUpper, sum_kappa_upper(cube));
  }
  if (thresholds.size() == cards.size() && !thresholds.empty()) {
    if (cards.size() > 1) report(BoundKind::kMinSizeForCarats, min_size_for_carats(thresholds));
    if (std::all_of(thresholds.begin(), thresholds.end(), [](double k) { return k >= 1.0; })) {
      report(BoundKind::kMaxCellsWithoutDiamond, max_cells_without_diamond(thresholds, cards));
    }
  }
  return out;
}

}  // namespace diamond
