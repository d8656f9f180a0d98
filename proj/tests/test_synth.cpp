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
#include <numeric>
#include <set>

#include "cube.hpp"
#include "error.hpp"
#include "ingest.hpp"
#include "synth.hpp"

using namespace diamond;

TEST_CASE("uniform cube of a million draws over 3591 values") {
  // Expected duplicate tuples: C(1e6, 2) / 3591^3, about 11.
  for (std::uint64_t seed : {1u, 2u}) {
    const auto g = generate(SynthSpec::uniform(3, 3591, 1000000, seed));
    CHECK(g.cube.cell_count() >= 999987 - 50);
    CHECK(g.cube.cell_count() <= 999987 + 50);
    CHECK_NOTHROW(validate(g.cube));
    double total = 0;
    for (double m : g.cube.measures()) total += m;
    CHECK(total == 1000000);
    for (std::size_t i = 0; i < 3; ++i) CHECK(g.cube.cardinality(i) == 3591);
  }
}

TEST_CASE("cardinality one collapses to a single cell") {
  const auto g = generate(SynthSpec::uniform(4, 1, 777, 9));
  CHECK(g.cube.cell_count() == 1);
  CHECK(g.cube.measure(0) == 777);
  const auto p = generate(SynthSpec::power(2.0, 2, 1, 50, 9));
  CHECK(p.cube.cell_count() == 1);
  CHECK(p.cube.measure(0) == 50);
}

TEST_CASE("generation is deterministic per seed") {
  const auto spec = SynthSpec::power(3.5, 3, 500, 20000, 42);
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(a.cube == b.cube);
  CHECK(a.dictionary == b.dictionary);
  CHECK(cube_digest(a.cube) == cube_digest(b.cube));
  CHECK(a.cube.source_id() == b.cube.source_id());
  CHECK(a.cube.source_id().find("rng=mt19937_64") != std::string::npos);
  CHECK(a.cube.source_id().find("pow:3.5") != std::string::npos);
  auto other = spec;
  other.seed = 43;
  CHECK_FALSE(generate(other).cube == a.cube);
}

TEST_CASE("cells never exceed draws or the realized volume") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto spec = seed % 2 ? SynthSpec::uniform(2, 6, 40, seed)
                               : SynthSpec::power(2.0 + seed * 0.1, 3, 30, 200, seed);
    const auto g = generate(spec);
    double volume = 1;
    for (auto n : g.cube.cardinalities()) volume *= n;
    CHECK(g.cube.cell_count() <= spec.draws);
    CHECK(g.cube.cell_count() <= volume);
    double total = 0;
    for (double m : g.cube.measures()) total += m;
    CHECK(total == spec.draws);
    CHECK_NOTHROW(validate(g.cube));
    // Dense re-indexing in ascending drawn value.
    for (std::size_t i = 0; i < g.cube.dim_count(); ++i) {
      const auto& v = g.dictionary.values[i];
      CHECK(v.size() == g.cube.cardinality(i));
      for (std::size_t j = 1; j < v.size(); ++j) CHECK(std::stoul(v[j - 1]) < std::stoul(v[j]));
    }
  }
}

TEST_CASE("uniform coordinates cover the range evenly") {
  SynthSpec spec = SynthSpec::uniform(1, 10, 1, 0);
  CHECK(draw_coordinate(spec, 10, 0) == 0);
  CHECK(draw_coordinate(spec, 10, ~std::uint64_t{0}) == 9);
  CHECK(draw_coordinate(spec, 10, std::uint64_t{1} << 63) == 5);
}

TEST_CASE("power-law draws follow the bounded inverse CDF") {
  const auto spec = SynthSpec::power(2.0, 1, 1000, 1, 0);
  CHECK(draw_coordinate(spec, 1000, 0) == 0);
  CHECK(draw_coordinate(spec, 1000, ~std::uint64_t{0}) == 999);
  // Density x^-2 on [1, n+1): P(rank 1) = (1 - 1/2) / (1 - 1/(n+1)).
  const auto g = generate(SynthSpec::power(2.0, 1, 1000, 200000, 7));
  const double expected = 0.5 / (1.0 - 1.0 / 1001.0);
  double head = 0;
  for (std::size_t c = 0; c < g.cube.cell_count(); ++c) {
    if (g.cube.coord(c, 0) == 0) head = g.cube.measure(c);
  }
  CHECK(head / 200000.0 == doctest::Approx(expected).epsilon(0.01));
  // A steeper exponent concentrates more mass at the head.
  const auto steep = generate(SynthSpec::power(3.5, 1, 1000, 200000, 7));
  CHECK(steep.cube.cardinality(0) < g.cube.cardinality(0));
}

TEST_CASE("invalid synthetic specs") {
  CHECK_THROWS_AS(generate(SynthSpec::power(1.0, 2, 10, 10, 0)), Error);
  CHECK_THROWS_AS(generate(SynthSpec::uniform(2, 0, 10, 0)), Error);
  CHECK_THROWS_AS(generate(SynthSpec::uniform(2, 10, 0, 0)), Error);
  CHECK_THROWS_AS(generate(SynthSpec::uniform(0, 10, 10, 0)), Error);
}
