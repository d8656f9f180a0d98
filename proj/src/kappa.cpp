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

#include "kappa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bounds.hpp"
#include "error.hpp"

namespace diamond {

namespace {

class Prober {
 public:
  Prober(const EncodedCube& cube, Aggregator agg, const KappaOptions& options,
         KappaResult& result)
      : cube_(cube), agg_(agg), options_(options), result_(result) {}

  // Dices the latest non-empty diamond (or the original cube) at uniform k.
  // A non-empty result becomes the new latest diamond.
  bool probe(double k) {
    const EncodedCube& input =
        options_.reuse_diamonds && have_latest_ ? latest_.retained_cells : cube_;
    const auto spec = CaratSpec::uniform(agg_, cube_.dim_count(), k);
    DiceOutcome out = options_.compacting ? dice_compacting(input, spec, options_.dicer)
                                          : dice_basic(input, spec, options_.dicer);
    ++result_.dice_invocations;
    result_.probes.push_back({k, !out.empty(), out.retained_cells.cell_count()});
    if (out.empty()) return false;
    latest_ = std::move(out);
    have_latest_ = true;
    return true;
  }

  DiceOutcome& latest() { return latest_; }

 private:
  const EncodedCube& cube_;
  Aggregator agg_;
  const KappaOptions& options_;
  KappaResult& result_;
  DiceOutcome latest_;
  bool have_latest_ = false;
};

}  // namespace

KappaResult find_kappa_count(const EncodedCube& cube, const KappaOptions& options) {
  if (cube.empty()) throw Error(ErrorCode::kEmptyCube, "kappa is undefined for an empty cube");
  const auto cards = realized_cardinalities(cube);
  std::uint64_t card_sum = 0;
  for (auto n : cards) card_sum += n;

  KappaResult result;
  // A single-cell cube has sum(n_i - 1) = 0 and no usable estimate.
  const std::int64_t lower =
      card_sum > cards.size() ? count_kappa_lower(cube.cell_count(), card_sum, cards.size()) : 0;
  const auto upper = static_cast<std::int64_t>(count_carat_upper(cards, cube.cell_count()));
  result.lower_bound_used = static_cast<double>(lower);
  result.upper_bound_used = static_cast<double>(upper);

  Prober prober(cube, Aggregator::kCount, options, result);
  std::int64_t lo = std::clamp<std::int64_t>(lower, 1, upper);
  std::int64_t hi = 0;  // smallest carat known to give an empty diamond; 0 = unknown
  if (!prober.probe(static_cast<double>(lo))) {
    // The estimate is sound, so this only guards against a broken bound:
    // restart from the 0-diamond, which is the whole cube.
    hi = lo;
    lo = 0;
    prober.probe(0.0);
  }
  while (hi == 0) {
    if (lo >= upper) {
      hi = lo + 1;
      break;
    }
    const std::int64_t k = std::min(2 * lo, upper);
    if (prober.probe(static_cast<double>(k))) {
      lo = k;
    } else {
      hi = k;
    }
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (prober.probe(static_cast<double>(mid))) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.kappa = static_cast<double>(lo);
  result.diamond = std::move(prober.latest());
  return result;
}

KappaResult find_kappa_sum(const EncodedCube& cube, const KappaOptions& options) {
  const double lower = sum_kappa_lower(cube);
  const double upper = sum_kappa_upper(cube);
  KappaResult result;
  result.lower_bound_used = lower;
  result.upper_bound_used = upper;
  Prober prober(cube, Aggregator::kSum, options, result);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const bool integral = cube.measures_integral();
  // The largest cell on its own is an m-carat subcube, so this probe is
  // never empty.
  prober.probe(lower);
  double lo = std::max(lower, prober.latest().min_slice_aggregate());
  double hi = integral ? upper + 1.0 : std::nextafter(upper, kInf);
  for (;;) {
    const double step_up = integral ? lo + 1.0 : std::nextafter(lo, kInf);
    if (hi <= step_up) break;
    double mid;
    if (integral) {
      mid = std::floor(lo + (hi - lo) / 2.0);
    } else if (hi - lo <= options.relative_epsilon * std::fabs(hi)) {
      if (!options.confirm_exact) {
        result.exact = false;
        break;
      }
      mid = step_up;
    } else {
      mid = lo + (hi - lo) / 2.0;
    }
    mid = std::max(mid, step_up);
    if (prober.probe(mid)) {
      lo = std::max(mid, prober.latest().min_slice_aggregate());
    } else {
      hi = mid;
    }
  }
  result.kappa = lo;
  result.diamond = std::move(prober.latest());
  return result;
}

KappaResult find_kappa(const EncodedCube& cube, Aggregator agg, const KappaOptions& options) {
  return agg == Aggregator::kCount ? find_kappa_count(cube, options)
                                   : find_kappa_sum(cube, options);
}

}  // namespace diamond
