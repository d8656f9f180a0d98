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

#include "dicer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <unistd.h>

#include "error.hpp"
#include "ingest.hpp"

namespace diamond {

std::vector<std::size_t> DiceOutcome::shape() const {
  std::vector<std::size_t> s;
  for (const auto& vals : retained_values) s.push_back(vals.size());
  return s;
}

double DiceOutcome::min_slice_aggregate() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& aggs : final_slice_aggregates) {
    for (double a : aggs) m = std::min(m, a);
  }
  return m;
}

namespace {

enum class Verdict { kKeep, kDelete, kUncertain };

// Per-dimension slice aggregates over the live cells. For SUM over
// fractional measures every decrement may round, so the table tracks how
// many decrements each entry absorbed since it was last summed from
// scratch; comparisons inside the resulting error band are reported as
// uncertain instead of being decided on a drifted value.
class SliceTable {
 public:
  SliceTable(std::span<const std::uint32_t> cardinalities, bool track_drift)
      : track_(track_drift) {
    offsets_.push_back(0);
    for (auto n : cardinalities) offsets_.push_back(offsets_.back() + n);
    agg_.assign(offsets_.back(), 0.0);
    dead_.assign(offsets_.back(), 0);
    if (track_) {
      ops_.assign(offsets_.back(), 0);
      ref_.assign(offsets_.back(), 0.0);
    }
  }

  std::size_t slot(std::size_t dim, ValueId v) const noexcept { return offsets_[dim] + v; }

  void add(std::size_t dim, ValueId v, double w) noexcept { agg_[slot(dim, v)] += w; }

  void remove(std::size_t dim, ValueId v, double w) noexcept {
    const auto s = slot(dim, v);
    agg_[s] -= w;
    if (track_) ++ops_[s];
  }

  void clear_sums() noexcept { std::fill(agg_.begin(), agg_.end(), 0.0); }

  // Declares every aggregate freshly summed.
  void mark_exact() noexcept {
    if (!track_) return;
    std::fill(ops_.begin(), ops_.end(), 0u);
    ref_ = agg_;
  }

  void set_exact(std::size_t dim, ValueId v, double sum) noexcept {
    const auto s = slot(dim, v);
    agg_[s] = sum;
    if (track_) {
      ops_[s] = 0;
      ref_[s] = sum;
    }
  }

  bool exact(std::size_t dim, ValueId v) const noexcept {
    return !track_ || ops_[slot(dim, v)] == 0;
  }

  bool dead(std::size_t dim, ValueId v) const noexcept { return dead_[slot(dim, v)] != 0; }
  void kill(std::size_t dim, ValueId v) noexcept { dead_[slot(dim, v)] = 1; }

  double aggregate(std::size_t dim, ValueId v) const noexcept { return agg_[slot(dim, v)]; }

  Verdict classify(std::size_t dim, ValueId v, double k) const noexcept {
    const auto s = slot(dim, v);
    if (dead_[s]) return Verdict::kDelete;
    const double a = agg_[s];
    if (!track_ || ops_[s] == 0) return a < k ? Verdict::kDelete : Verdict::kKeep;
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    const double band = (static_cast<double>(ops_[s]) + 1.0) * 2.0 * kEps * ref_[s] +
                        std::numeric_limits<double>::denorm_min();
    if (a < k - band) return Verdict::kDelete;
    if (a >= k + band) return Verdict::kKeep;
    return Verdict::kUncertain;
  }

 private:
  bool track_;
  std::vector<std::size_t> offsets_;
  std::vector<double> agg_;
  std::vector<std::uint8_t> dead_;
  std::vector<std::uint32_t> ops_;
  std::vector<double> ref_;
};

std::vector<std::size_t> visiting_order(std::size_t d, const DicerConfig& config,
                                        std::mt19937_64& rng) {
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (!config.dimension_order.empty()) {
    std::vector<std::size_t> sorted = config.dimension_order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != order) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dimension_order must be a permutation of 0.." + std::to_string(d - 1));
    }
    return config.dimension_order;
  }
  if (!config.canonical_order) std::shuffle(order.begin(), order.end(), rng);
  return order;
}

void check_config(const DicerConfig& config) {
  const double tau = config.compaction_threshold;
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "compaction threshold must lie in [0, 1)");
  }
}

DiceOutcome finalize(std::vector<std::uint32_t> cards, std::vector<ValueId> coords,
                     std::vector<double> measures, Aggregator agg, std::string source_id) {
  DiceOutcome out;
  const std::size_t d = cards.size();
  const std::size_t n = measures.size();
  std::vector<std::vector<std::uint64_t>> counts(d);
  std::vector<std::vector<double>> sums(d);
  for (std::size_t i = 0; i < d; ++i) {
    counts[i].assign(cards[i], 0);
    sums[i].assign(cards[i], 0.0);
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < d; ++i) {
      const ValueId v = coords[c * d + i];
      ++counts[i][v];
      sums[i][v] += measures[c];
    }
  }
  out.retained_values.resize(d);
  out.final_slice_aggregates.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (ValueId v = 0; v < cards[i]; ++v) {
      if (counts[i][v] == 0) continue;
      out.retained_values[i].push_back(v);
      out.final_slice_aggregates[i].push_back(
          agg == Aggregator::kCount ? static_cast<double>(counts[i][v]) : sums[i][v]);
    }
  }
  out.retained_cells = EncodedCube(std::move(cards), std::move(coords), std::move(measures),
                                   std::move(source_id));
  return out;
}

// --- cell storage for the compacting algorithm ------------------------------

class MemoryCells {
 public:
  explicit MemoryCells(const EncodedCube& cube) : source_(&cube), d_(cube.dim_count()) {}

  std::uint64_t size() const noexcept { return measures().size(); }

  template <class F>
  void scan(F&& f) {
    const auto co = coords();
    const auto me = measures();
    for (std::size_t c = 0; c < me.size(); ++c) f(c, co.data() + c * d_, me[c]);
  }

  void compact(const std::vector<std::uint8_t>& alive) {
    const auto co = coords();
    const auto me = measures();
    std::vector<ValueId> new_coords;
    std::vector<double> new_measures;
    for (std::size_t c = 0; c < me.size(); ++c) {
      if (!alive[c]) continue;
      new_coords.insert(new_coords.end(), co.begin() + c * d_, co.begin() + (c + 1) * d_);
      new_measures.push_back(me[c]);
    }
    owned_coords_ = std::move(new_coords);
    owned_measures_ = std::move(new_measures);
    source_ = nullptr;
  }

  void load(std::vector<ValueId>& coords_out, std::vector<double>& measures_out) {
    if (source_) {
      coords_out.assign(source_->flat_coords().begin(), source_->flat_coords().end());
      measures_out.assign(source_->measures().begin(), source_->measures().end());
    } else {
      coords_out = std::move(owned_coords_);
      measures_out = std::move(owned_measures_);
    }
  }

 private:
  std::span<const ValueId> coords() const noexcept {
    return source_ ? source_->flat_coords() : std::span<const ValueId>(owned_coords_);
  }
  std::span<const double> measures() const noexcept {
    return source_ ? source_->measures() : std::span<const double>(owned_measures_);
  }

  const EncodedCube* source_;
  std::size_t d_;
  std::vector<ValueId> owned_coords_;
  std::vector<double> owned_measures_;
};

class ScratchFile {
 public:
  explicit ScratchFile(const std::filesystem::path& dir) {
    static std::atomic<std::uint64_t> counter{0};
    path_ = dir / ("diamond-" + std::to_string(::getpid()) + "-" +
                   std::to_string(counter.fetch_add(1)) + ".cells");
  }
  ScratchFile(const ScratchFile&) = delete;
  ScratchFile& operator=(const ScratchFile&) = delete;
  ~ScratchFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

class FileCells {
 public:
  FileCells(std::filesystem::path input, std::filesystem::path work_dir)
      : input_(std::move(input)), work_dir_(std::move(work_dir)) {
    if (work_dir_.empty()) work_dir_ = std::filesystem::temp_directory_path();
    header_ = read_binary_header(input_);
    size_ = header_.cell_count;
  }

  const BinaryHeader& header() const noexcept { return header_; }
  std::uint64_t size() const noexcept { return size_; }

  template <class F>
  void scan(F&& f) {
    // The input checksum is verified on the first pass only; scratch files
    // are our own.
    CellFileReader reader(current(), !verified_);
    verified_ = true;
    const std::size_t d = header_.dim_count();
    std::uint64_t index = 0;
    while (reader.read(chunk_coords_, chunk_measures_, kChunk) > 0) {
      for (std::size_t c = 0; c < chunk_measures_.size(); ++c, ++index) {
        f(index, chunk_coords_.data() + c * d, chunk_measures_[c]);
      }
    }
  }

  void compact(const std::vector<std::uint8_t>& alive) {
    auto next = std::make_unique<ScratchFile>(work_dir_);
    {
      CellFileWriter writer(next->path(), header_.cardinalities);
      const std::size_t d = header_.dim_count();
      scan([&](std::uint64_t idx, const ValueId* x, double m) {
        if (alive[idx]) writer.write({x, d}, m);
      });
      writer.finish();
      size_ = writer.cell_count();
    }
    scratch_ = std::move(next);
  }

  void load(std::vector<ValueId>& coords_out, std::vector<double>& measures_out) {
    coords_out.clear();
    measures_out.clear();
    coords_out.reserve(static_cast<std::size_t>(size_ * header_.dim_count()));
    measures_out.reserve(static_cast<std::size_t>(size_));
    scan([&](std::uint64_t, const ValueId* x, double m) {
      coords_out.insert(coords_out.end(), x, x + header_.dim_count());
      measures_out.push_back(m);
    });
  }

 private:
  static constexpr std::size_t kChunk = 1 << 16;

  const std::filesystem::path& current() const noexcept {
    return scratch_ ? scratch_->path() : input_;
  }

  std::filesystem::path input_;
  std::filesystem::path work_dir_;
  BinaryHeader header_;
  std::uint64_t size_ = 0;
  std::unique_ptr<ScratchFile> scratch_;
  bool verified_ = false;
  std::vector<ValueId> chunk_coords_;
  std::vector<double> chunk_measures_;
};

template <class Cells>
DiceOutcome run_compacting(Cells& cells, std::vector<std::uint32_t> cards,
                           const CaratSpec& spec, bool exact_arithmetic,
                           const DicerConfig& config, std::string source_id) {
  const std::size_t d = cards.size();
  const bool count = spec.aggregator == Aggregator::kCount;
  const auto& k = spec.thresholds;
  std::mt19937_64 rng(config.order_seed);
  const auto dims = visiting_order(d, config, rng);
  SliceTable table(cards, !count && !exact_arithmetic);

  auto recompute = [&](std::span<const std::uint8_t> alive) {
    table.clear_sums();
    cells.scan([&](std::uint64_t idx, const ValueId* x, double m) {
      if (!alive[idx]) return;
      const double w = count ? 1.0 : m;
      for (std::size_t i = 0; i < d; ++i) table.add(i, x[i], w);
    });
    table.mark_exact();
  };

  std::vector<std::uint8_t> alive(static_cast<std::size_t>(cells.size()), 1);
  recompute(alive);

  DiceOutcome out;
  std::uint64_t live = cells.size();
  std::uint64_t marked = 0;
  for (;;) {
    ++out.major_iterations;
    std::uint64_t deleted = 0;
    bool uncertain = false;
    cells.scan([&](std::uint64_t idx, const ValueId* x, double m) {
      if (!alive[idx]) return;
      for (std::size_t i : dims) {
        const Verdict verdict = table.classify(i, x[i], k[i]);
        if (verdict == Verdict::kUncertain) {
          uncertain = true;
          continue;
        }
        if (verdict == Verdict::kKeep) continue;
        table.kill(i, x[i]);
        const double w = count ? 1.0 : m;
        for (std::size_t j = 0; j < d; ++j) table.remove(j, x[j], w);
        alive[idx] = 0;
        ++deleted;
        break;
      }
    });
    live -= deleted;
    marked += deleted;
    out.deleted_cell_count += deleted;
    out.cells_after_iteration.push_back(live);
    if (deleted > 0 && static_cast<double>(marked) >
                           config.compaction_threshold * static_cast<double>(cells.size())) {
      cells.compact(alive);
      alive.assign(static_cast<std::size_t>(cells.size()), 1);
      marked = 0;
      ++out.compactions;
      recompute(alive);
    } else if (uncertain) {
      recompute(alive);
    }
    if (deleted == 0 && !uncertain) break;
  }
  if (marked > 0) cells.compact(alive);

  std::vector<ValueId> coords;
  std::vector<double> measures;
  cells.load(coords, measures);
  DiceOutcome result = finalize(std::move(cards), std::move(coords), std::move(measures),
                                spec.aggregator, std::move(source_id));
  result.major_iterations = out.major_iterations;
  result.deleted_cell_count = out.deleted_cell_count;
  result.cells_after_iteration = std::move(out.cells_after_iteration);
  result.compactions = out.compactions;
  return result;
}

}  // namespace

DiceOutcome outcome_from_cells(EncodedCube cells, Aggregator agg) {
  std::string source = cells.source_id();
  return finalize({cells.cardinalities().begin(), cells.cardinalities().end()},
                  {cells.flat_coords().begin(), cells.flat_coords().end()},
                  {cells.measures().begin(), cells.measures().end()}, agg, std::move(source));
}

DiceOutcome dice_basic(const EncodedCube& cube, const CaratSpec& spec,
                       const DicerConfig& config) {
  check_spec(cube, spec);
  check_config(config);
  const std::size_t d = cube.dim_count();
  const std::size_t n = cube.cell_count();
  const bool count = spec.aggregator == Aggregator::kCount;
  const auto& k = spec.thresholds;
  auto weight = [&](std::size_t c) { return count ? 1.0 : cube.measure(c); };

  // Per-dimension inverted index: value -> cells, ascending cell index.
  std::vector<std::vector<std::size_t>> offsets(d);
  std::vector<std::vector<std::uint32_t>> members(d);
  for (std::size_t i = 0; i < d; ++i) {
    auto& off = offsets[i];
    off.assign(cube.cardinality(i) + 1, 0);
    for (std::size_t c = 0; c < n; ++c) ++off[cube.coord(c, i) + 1];
    std::partial_sum(off.begin(), off.end(), off.begin());
    members[i].resize(n);
    std::vector<std::size_t> fill(off.begin(), off.end() - 1);
    for (std::size_t c = 0; c < n; ++c) {
      members[i][fill[cube.coord(c, i)]++] = static_cast<std::uint32_t>(c);
    }
  }

  SliceTable table(cube.cardinalities(), !count && !cube.measures_integral());
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < d; ++i) table.add(i, cube.coord(c, i), weight(c));
  }
  table.mark_exact();

  std::mt19937_64 rng(config.order_seed);
  const auto dims = visiting_order(d, config, rng);
  std::vector<std::vector<ValueId>> visit(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (ValueId v = 0; v < cube.cardinality(i); ++v) {
      if (offsets[i][v + 1] > offsets[i][v]) visit[i].push_back(v);
    }
    if (!config.canonical_order) std::shuffle(visit[i].begin(), visit[i].end(), rng);
  }

  std::vector<std::uint8_t> alive(n, 1);
  std::uint64_t live = n;
  DiceOutcome out;
  bool stable = false;
  while (!stable) {
    stable = true;
    ++out.major_iterations;
    for (std::size_t dim : dims) {
      for (ValueId v : visit[dim]) {
        if (table.dead(dim, v)) continue;
        if (!table.exact(dim, v) && table.classify(dim, v, k[dim]) != Verdict::kKeep) {
          double sum = 0.0;
          for (std::size_t p = offsets[dim][v]; p < offsets[dim][v + 1]; ++p) {
            const auto c = members[dim][p];
            if (alive[c]) sum += weight(c);
          }
          table.set_exact(dim, v, sum);
        }
        if (table.classify(dim, v, k[dim]) != Verdict::kDelete) continue;
        table.kill(dim, v);
        stable = false;
        for (std::size_t p = offsets[dim][v]; p < offsets[dim][v + 1]; ++p) {
          const auto c = members[dim][p];
          if (!alive[c]) continue;
          alive[c] = 0;
          --live;
          for (std::size_t j = 0; j < d; ++j) table.remove(j, cube.coord(c, j), weight(c));
        }
      }
    }
    out.cells_after_iteration.push_back(live);
  }

  std::vector<ValueId> coords;
  std::vector<double> measures;
  coords.reserve(live * d);
  measures.reserve(live);
  for (std::size_t c = 0; c < n; ++c) {
    if (!alive[c]) continue;
    auto x = cube.coords(c);
    coords.insert(coords.end(), x.begin(), x.end());
    measures.push_back(cube.measure(c));
  }
  DiceOutcome result = finalize({cube.cardinalities().begin(), cube.cardinalities().end()},
                                std::move(coords), std::move(measures), spec.aggregator,
                                cube.source_id());
  result.major_iterations = out.major_iterations;
  result.deleted_cell_count = n - live;
  result.cells_after_iteration = std::move(out.cells_after_iteration);
  return result;
}

DiceOutcome dice_compacting(const EncodedCube& cube, const CaratSpec& spec,
                            const DicerConfig& config) {
  check_spec(cube, spec);
  check_config(config);
  MemoryCells cells(cube);
  return run_compacting(cells, {cube.cardinalities().begin(), cube.cardinalities().end()}, spec,
                        cube.measures_integral(), config, cube.source_id());
}

DiceOutcome dice_compacting_file(const std::filesystem::path& path, const CaratSpec& spec,
                                 const DicerConfig& config) {
  check_config(config);
  FileCells cells(path, config.work_directory);
  const auto& cards = cells.header().cardinalities;
  const std::size_t d = cards.size();
  // check_spec needs a cube; validate against an empty one of the same shape
  // and check measures while scanning.
  check_spec(EncodedCube(cards, {}, {}), spec);

  bool integral = true;
  std::vector<std::string> problems;
  double abs_total = 0.0;
  cells.scan([&](std::uint64_t idx, const ValueId* x, double m) {
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] >= cards[i] && problems.size() < 20) {
        problems.push_back("cell " + std::to_string(idx) + " id out of range in dimension " +
                           std::to_string(i));
      }
    }
    if (!std::isfinite(m) && problems.size() < 20) {
      problems.push_back("cell " + std::to_string(idx) + " has a non-finite measure");
    }
    if (spec.aggregator == Aggregator::kSum && m < 0.0) {
      throw Error(ErrorCode::kNonMonotone,
                  "SUM is not monotone over negative measures; the diamond is not unique");
    }
    if (m != std::floor(m)) integral = false;
    abs_total += std::fabs(m);
  });
  if (!problems.empty()) {
    std::string msg = path.string() + ": malformed cube";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorCode::kInvalidCube, msg);
  }
  integral = integral && abs_total < 9007199254740992.0;
  return run_compacting(cells, cards, spec, integral, config, path.filename().string());
}

bool check_carats(const EncodedCube& cube, const CaratSpec& spec) {
  check_spec(cube, spec);
  for (std::size_t i = 0; i < cube.dim_count(); ++i) {
    const auto aggs = slice_aggregates(cube, i, spec.aggregator);
    for (double a : aggs) {
      if (a < spec.thresholds[i]) return false;
    }
  }
  return true;
}

DenseSubcube reindex_dense(const EncodedCube& cube) {
  const std::size_t d = cube.dim_count();
  DenseSubcube out;
  out.original_ids.resize(d);
  std::vector<std::vector<ValueId>> remap(d);
  std::vector<std::uint32_t> cards(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::uint8_t> seen(cube.cardinality(i), 0);
    for (std::size_t c = 0; c < cube.cell_count(); ++c) seen[cube.coord(c, i)] = 1;
    remap[i].assign(cube.cardinality(i), 0);
    for (ValueId v = 0; v < cube.cardinality(i); ++v) {
      if (!seen[v]) continue;
      remap[i][v] = static_cast<ValueId>(out.original_ids[i].size());
      out.original_ids[i].push_back(v);
    }
    cards[i] = static_cast<std::uint32_t>(out.original_ids[i].size());
  }
  std::vector<ValueId> coords(cube.flat_coords().begin(), cube.flat_coords().end());
  for (std::size_t c = 0; c < cube.cell_count(); ++c) {
    for (std::size_t i = 0; i < d; ++i) coords[c * d + i] = remap[i][coords[c * d + i]];
  }
  out.cube = EncodedCube(std::move(cards), std::move(coords),
                         {cube.measures().begin(), cube.measures().end()}, cube.source_id());
  return out;
}

}  // namespace diamond
