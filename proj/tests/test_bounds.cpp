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

#include <doctest.h>

#include <cmath>
#include <random>

#include "bounds.hpp"
#include "dicer.hpp"
#include "error.hpp"
#include "fixtures.hpp"
#include "kappa.hpp"

using namespace diamond;
using namespace diamond::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

EncodedCube full_grid(std::uint32_t rows, std::uint32_t cols, double measure = 1.0) {
  std::vector<ValueId> coords;
  for (ValueId r = 0; r < rows; ++r) {
    for (ValueId c = 0; c < cols; ++c) {
      coords.push_back(r);
      coords.push_back(c);
    }
  }
  return EncodedCube({rows, cols}, coords, std::vector<double>(rows * cols, measure));
}

}  // namespace

TEST_CASE("count kappa lower bound") {
  // Sum of cardinalities 10,773 over three dimensions.
  CHECK(count_kappa_lower(999987, 10773, 3) == 89);
  CHECK(count_kappa_lower(100478158, 500137, 3) == 197);
  const auto t = tiny9();
  CHECK(count_kappa_lower(cube_stats(t.cube), t.cube.cardinalities()) == 0);
  CHECK(code_of([] { count_kappa_lower(5, 1, 1); }) == ErrorCode::kUndefinedBound);
  CHECK(code_of([] { count_kappa_lower(5, 3, 3); }) == ErrorCode::kUndefinedBound);
}

TEST_CASE("count carat upper bound") {
  const auto grid = full_grid(2, 3);
  CHECK(count_carat_upper(grid.cardinalities(), grid.cell_count()) == 2);
  const auto t = tiny9();
  CHECK(count_carat_upper(t.cube.cardinalities(), 9, 2) == 9);
  CHECK(count_carat_upper(t.cube.cardinalities(), 100, 2) == 20);
  const std::vector<std::uint32_t> u1 = {3591, 3591, 3591};
  CHECK(count_carat_upper(u1, 999987) == 999987);
  CHECK(code_of([&] { count_carat_upper(u1, 10, 3); }) == ErrorCode::kOutOfRange);
}

TEST_CASE("minimum size for carats") {
  const std::vector<double> k22 = {2, 2};
  CHECK(min_size_for_carats(k22) == doctest::Approx(4));
  const std::vector<double> k333 = {3, 3, 3};
  CHECK(min_size_for_carats(k333) == doctest::Approx(std::pow(3.0, 1.5)));
  const std::vector<double> with_zero = {0, 5, 7};
  CHECK(min_size_for_carats(with_zero) == 0);
  const std::vector<double> one = {4};
  CHECK(code_of([&] { min_size_for_carats(one); }) == ErrorCode::kUndefinedBound);
  const std::vector<double> huge(40, 1e300);
  CHECK(std::isfinite(min_size_for_carats(huge)));
}

TEST_CASE("cells without a diamond") {
  const std::vector<double> k2 = {2, 2, 2};
  const std::vector<std::uint32_t> tiny_cards = {4, 5, 4};
  CHECK(max_cells_without_diamond(k2, tiny_cards) == 11);
  const std::vector<double> k22 = {2, 2};
  const std::vector<std::uint32_t> c22 = {2, 2};
  CHECK(max_cells_without_diamond(k22, c22) == 3);
  const std::vector<double> ones = {1, 1};
  const std::vector<std::uint32_t> c99 = {9, 9};
  CHECK(max_cells_without_diamond(ones, c99) == 1);
  const std::vector<double> half = {0.5, 2};
  CHECK(code_of([&] { max_cells_without_diamond(half, c22); }) == ErrorCode::kDomain);

  // Mixed carats: every row of a full 4x2 grid has 2 < 3 cells.
  const auto grid = full_grid(4, 2);
  const std::vector<double> k31 = {3, 1};
  CHECK(dice_basic(grid, CaratSpec{Aggregator::kCount, k31}).empty());
  CHECK(max_cells_without_diamond(k31, grid.cardinalities()) == 8);
  CHECK_FALSE(guarantees_nonempty(8, k31, grid.cardinalities()));

  CHECK(guarantees_nonempty(4, k22, c22));
  CHECK_FALSE(guarantees_nonempty(9, k2, tiny_cards));
  CHECK_FALSE(dice_basic(tiny9().cube, CaratSpec::uniform(Aggregator::kCount, 3, 2)).empty());
  const std::vector<std::uint32_t> c88 = {8, 8};
  CHECK(guarantees_nonempty(16, k22, c88));
  CHECK(staircase(8).cell_count() == 16);
}

TEST_CASE("sum kappa bounds") {
  const auto s = sales();
  CHECK(sum_kappa_lower(s.cube) == 6.4);
  CHECK(sum_kappa_upper(s.cube) == doctest::Approx(15.6));

  EncodedCube single({1, 1}, {0, 0}, {7});
  CHECK(sum_kappa_lower(single) == 7);
  CHECK(sum_kappa_upper(single) == 7);

  const auto flat = full_grid(3, 3, 2.5);
  CHECK(sum_kappa_upper(flat) == 7.5);
  CHECK(find_kappa_sum(flat).kappa == 7.5);

  CHECK(code_of([] { sum_kappa_lower(EncodedCube({1, 1}, {}, {})); }) == ErrorCode::kEmptyCube);
  CHECK(code_of([] { sum_kappa_upper(mixed_sign()); }) == ErrorCode::kNonMonotone);
}

TEST_CASE("a dominant cell makes the sum lower bound exact") {
  // One event outweighs every slice that does not contain it.
  EncodedCube cube({3, 3}, {0, 0, 1, 1, 2, 2, 1, 2, 2, 1}, {50, 1, 2, 1, 1});
  CHECK(sum_kappa_lower(cube) == 50);
  CHECK(find_kappa_sum(cube).kappa == 50);
}

TEST_CASE("sum lower bound of a diamond") {
  const auto s = sales();
  const auto o = dice_basic(s.cube, CaratSpec{Aggregator::kSum, {5, 10}});
  CHECK(sum_lower_bound_of_diamond(o, 5) == 15);
  double total = 0;
  for (double m : o.retained_cells.measures()) total += m;
  CHECK(total == doctest::Approx(31.4));
  CHECK(total >= 15);
  CHECK(sum_lower_bound_of_diamond(DiceOutcome{}, 5) == 0);
  EncodedCube single({1, 1}, {0, 0}, {7});
  const auto one = dice_basic(single, CaratSpec::uniform(Aggregator::kSum, 2, 7));
  CHECK(sum_lower_bound_of_diamond(one, 7) == 7);
}

TEST_CASE("all_bounds lists what applies") {
  const auto s = sales();
  const std::vector<double> k = {5, 10};
  const auto reports = all_bounds(s.cube, k);
  std::set<BoundKind> kinds;
  for (const auto& r : reports) {
    kinds.insert(r.kind);
    CHECK(std::isfinite(r.value));
    CHECK(r.cell_count == 30);
  }
  CHECK(kinds.count(BoundKind::kSumKappaLower));
  CHECK(kinds.count(BoundKind::kSumKappaUpper));
  CHECK(kinds.count(BoundKind::kMinSizeForCarats));
  CHECK(kinds.count(BoundKind::kMaxCellsWithoutDiamond));
  CHECK(is_lower_bound(BoundKind::kSumKappaLower));
  CHECK_FALSE(is_lower_bound(BoundKind::kSumKappaUpper));
  CHECK(std::string(bound_kind_name(BoundKind::kCountKappaLower)) == "count_kappa_lower");

  for (const auto& r : all_bounds(mixed_sign())) {
    CHECK(r.kind != BoundKind::kSumKappaLower);
  }
}

TEST_CASE("bounds bracket kappa on random cubes") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cube = random_cube(rng, {2, 3, 6, 50, 9});
    const auto cards = realized_cardinalities(cube);
    const auto stats = cube_stats(cube);
    const auto kc = find_kappa_count(cube).kappa;
    std::uint64_t card_sum = 0;
    for (auto n : cards) card_sum += n;
    if (card_sum > cards.size()) {
      CHECK(kc >= count_kappa_lower(stats.cell_count, card_sum, cards.size()));
    }
    CHECK(kc <= count_carat_upper(cards, stats.cell_count));
    if (stats.measure_max > 0) {
      const auto ks = find_kappa_sum(cube).kappa;
      CHECK(ks >= sum_kappa_lower(cube));
      CHECK(ks <= sum_kappa_upper(cube));
    }
  }
}

TEST_CASE("guaranteed carats always give a non-empty diamond") {
  std::mt19937_64 rng(32);
  int guaranteed = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto cube = random_cube(rng, {2, 3, 5, 60, 1});
    const auto cards = realized_cardinalities(cube);
    std::vector<double> k(cube.dim_count());
    for (auto& x : k) x = std::uniform_int_distribution<int>(1, 3)(rng);
    if (trial % 2) std::fill(k.begin(), k.end(), k[0]);
    if (!guarantees_nonempty(cube.cell_count(), k, cards)) continue;
    ++guaranteed;
    CHECK_FALSE(dice_basic(cube, CaratSpec{Aggregator::kCount, k}).empty());
  }
  CHECK(guaranteed > 40);
}

TEST_CASE("non-empty count diamonds are large enough") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const auto cube = random_cube(rng, {2, 3, 6, 60, 1});
    const auto k = random_carats(rng, cube.dim_count(), 4);
    const auto o = dice_basic(cube, CaratSpec{Aggregator::kCount, k});
    if (o.empty()) continue;
    const auto shape = o.shape();
    double widest = 0;
    for (std::size_t i = 0; i < k.size(); ++i) widest = std::max(widest, k[i] * shape[i]);
    CHECK(o.retained_cells.cell_count() >= widest);
    CHECK(widest >= min_size_for_carats(k) - 1e-9);
  }
}
