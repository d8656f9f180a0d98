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

#include <random>

#include "dicer.hpp"
#include "error.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace diamond;
using namespace diamond::testing;

TEST_CASE("enumeration finds the purchase diamond") {
  const auto t = tiny9();
  const auto o = brute_force_diamond(t.cube, CaratSpec::uniform(Aggregator::kCount, 3, 2));
  CHECK(cell_names(o.retained_cells, t.dictionary) ==
        std::set<std::string>{"1|a|Jan", "1|b|Jan", "3|a|Feb", "3|b|Feb"});
  CHECK(o.major_iterations == 0);
}

TEST_CASE("enumeration finds the sales diamond") {
  const auto s = sales();
  const auto o = brute_force_diamond(s.cube, CaratSpec{Aggregator::kSum, {5, 10}});
  CHECK(cell_names(o.retained_cells, s.dictionary) ==
        cross({"Camcorder", "Phone", "Camera"}, {"Montreal", "Miami", "Paris"}));
}

TEST_CASE("zero carats enumerate to the whole cube") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const auto cube = random_cube(rng);
    const auto o = brute_force_diamond(cube, CaratSpec::uniform(Aggregator::kCount,
                                                                cube.dim_count(), 0));
    CHECK(o.retained_cells == cube);
  }
}

TEST_CASE("satisfying subcubes are closed under union") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 150; ++trial) {
    const auto cube = random_cube(rng, {2, 3, 4, 12, 9});
    const auto agg = trial % 2 ? Aggregator::kSum : Aggregator::kCount;
    const CaratSpec spec{agg, random_carats(rng, cube.dim_count(), 3)};
    const auto found = satisfying_subcubes(cube, spec);
    for (const auto& m : found) CHECK(subcube_has_carats(cube, spec, m));
    for (std::size_t a = 0; a < found.size() && a < 30; ++a) {
      for (std::size_t b = a + 1; b < found.size() && b < 30; ++b) {
        SubcubeMask u(found[a].size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = found[a][i] | found[b][i];
        CHECK(subcube_has_carats(cube, spec, u));
      }
    }
  }
}

TEST_CASE("enumeration guard") {
  std::vector<ValueId> coords;
  for (ValueId v = 0; v < 13; ++v) {
    coords.push_back(v);
    coords.push_back(v);
  }
  EncodedCube big({13, 13}, coords, std::vector<double>(13, 1.0));
  try {
    brute_force_diamond(big, CaratSpec::uniform(Aggregator::kCount, 2, 1));
    FAIL("expected the guard to trip");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooLarge);
  }
  try {
    brute_force_diamond(mixed_sign(), CaratSpec::uniform(Aggregator::kSum, 2, 1));
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonMonotone);
  }
}
