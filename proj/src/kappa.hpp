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

struct KappaProbe {
  double k = 0.0;
  bool nonempty = false;
  std::uint64_t cells_remaining = 0;
};

struct KappaOptions {
  DicerConfig dicer;
  // Probe with dice_compacting (true) or dice_basic (false).
  bool compacting = true;
  // Feed each non-empty diamond into the next probe. Disabling this dices
  // the original cube every time, which must give the same answer.
  bool reuse_diamonds = true;
  // SUM over fractional measures: bisection stops once the bracket is this
  // narrow relative to its upper end...
  double relative_epsilon = 1e-9;
  // ...after which single-step probes pin kappa exactly.
  bool confirm_exact = true;
};

struct KappaResult {
  double kappa = 0.0;
  DiceOutcome diamond;
  double lower_bound_used = 0.0;
  double upper_bound_used = 0.0;
  std::vector<KappaProbe> probes;
  std::size_t dice_invocations = 0;
  // False only when the SUM search stopped on the epsilon bracket.
  bool exact = true;
};

// Seeds from the |C| / sum(n_i - 1) - 3 bound, doubles until empty (capped
// by the carat upper bound), then bisects over integers.
KappaResult find_kappa_count(const EncodedCube& cube, const KappaOptions& options = {});

// Bisection between the largest cell and min_i max_j slice sum. After every
// non-empty probe the lower end jumps to that diamond's smallest slice
// aggregate, which is itself attainable.
KappaResult find_kappa_sum(const EncodedCube& cube, const KappaOptions& options = {});

KappaResult find_kappa(const EncodedCube& cube, Aggregator agg, const KappaOptions& options = {});

}  // namespace diamond
