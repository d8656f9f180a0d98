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

#include "diamond/diamond.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <new>
#include <span>
#include <sstream>
#include <string>

#include "bounds.hpp"
#include "cube.hpp"
#include "dicer.hpp"
#include "error.hpp"
#include "ingest.hpp"
#include "kappa.hpp"
#include "oracle.hpp"
#include "synth.hpp"

struct diamond_cube {
  diamond::EncodedTable table;
};

struct diamond_outcome {
  diamond::DiceOutcome outcome;
  diamond::Dictionary dictionary;
};

struct diamond_kappa {
  diamond::KappaResult result;
  diamond_outcome diamond;
};

namespace {

thread_local std::string tl_error;

diamond_status fail(diamond_status status, const char* message) {
  tl_error = message;
  return status;
}

diamond_status status_of(diamond::ErrorCode code) {
  using diamond::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return DIAMOND_ERR_INVALID_ARGUMENT;
    case ErrorCode::kOutOfRange: return DIAMOND_ERR_OUT_OF_RANGE;
    case ErrorCode::kNonMonotone: return DIAMOND_ERR_NON_MONOTONE;
    case ErrorCode::kDimensionMismatch: return DIAMOND_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kInvalidCube: return DIAMOND_ERR_INVALID_CUBE;
    case ErrorCode::kParse: return DIAMOND_ERR_PARSE;
    case ErrorCode::kDuplicate: return DIAMOND_ERR_DUPLICATE;
    case ErrorCode::kIo: return DIAMOND_ERR_IO;
    case ErrorCode::kBadMagic: return DIAMOND_ERR_BAD_MAGIC;
    case ErrorCode::kVersionMismatch: return DIAMOND_ERR_VERSION_MISMATCH;
    case ErrorCode::kTruncated: return DIAMOND_ERR_TRUNCATED;
    case ErrorCode::kChecksumMismatch: return DIAMOND_ERR_CHECKSUM;
    case ErrorCode::kUndefinedBound: return DIAMOND_ERR_UNDEFINED_BOUND;
    case ErrorCode::kDomain: return DIAMOND_ERR_DOMAIN;
    case ErrorCode::kTooLarge: return DIAMOND_ERR_TOO_LARGE;
    case ErrorCode::kEmptyCube: return DIAMOND_ERR_EMPTY_CUBE;
  }
  return DIAMOND_ERR_INTERNAL;
}

template <typename F>
diamond_status guarded(F&& body) {
  try {
    body();
    return DIAMOND_OK;
  } catch (const diamond::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DIAMOND_ERR_TOO_LARGE, "out of memory");
  } catch (const std::exception& e) {
    return fail(DIAMOND_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DIAMOND_ERR_INTERNAL, "unknown failure");
  }
}

#define DIAMOND_REQUIRE(ptr)                                         \
  do {                                                               \
    if (!(ptr)) return fail(DIAMOND_ERR_NULL_POINTER, "null pointer: " #ptr); \
  } while (0)

diamond::Aggregator to_aggregator(diamond_aggregator agg) {
  switch (agg) {
    case DIAMOND_COUNT: return diamond::Aggregator::kCount;
    case DIAMOND_SUM: return diamond::Aggregator::kSum;
  }
  throw diamond::Error(diamond::ErrorCode::kInvalidArgument, "unknown aggregator");
}

diamond::CaratSpec to_spec(diamond_aggregator agg, const double* thresholds, size_t count) {
  if (count > 0 && !thresholds) {
    throw diamond::Error(diamond::ErrorCode::kInvalidArgument, "thresholds missing");
  }
  return {to_aggregator(agg), std::vector<double>(thresholds, thresholds + count)};
}

diamond::DicerConfig to_config(const diamond_dice_options& o) {
  diamond::DicerConfig config;
  config.compaction_threshold = o.compaction_threshold;
  config.canonical_order = o.canonical_order != 0;
  config.order_seed = o.order_seed;
  if (o.work_directory) config.work_directory = o.work_directory;
  return config;
}

diamond::IngestConfig to_ingest(const diamond_ingest_options* options) {
  diamond_ingest_options o;
  diamond_ingest_options_init(&o);
  if (options) o = *options;
  diamond::IngestConfig config;
  config.delimiter = o.delimiter;
  config.has_header = o.has_header != 0;
  if (o.dimension_column_count > 0) {
    if (!o.dimension_columns) {
      throw diamond::Error(diamond::ErrorCode::kInvalidArgument, "dimension columns missing");
    }
    config.dimension_columns.assign(o.dimension_columns,
                                    o.dimension_columns + o.dimension_column_count);
  }
  if (o.measure_column >= 0) config.measure_column = static_cast<std::size_t>(o.measure_column);
  switch (o.duplicates) {
    case DIAMOND_DUP_SUM: config.duplicate_policy = diamond::DuplicatePolicy::kSumMeasures; break;
    case DIAMOND_DUP_COUNT:
      config.duplicate_policy = diamond::DuplicatePolicy::kCountOccurrences;
      break;
    case DIAMOND_DUP_ERROR: config.duplicate_policy = diamond::DuplicatePolicy::kError; break;
    default:
      throw diamond::Error(diamond::ErrorCode::kInvalidArgument, "unknown duplicate policy");
  }
  config.sort_dictionary = o.sort_dictionary != 0;
  return config;
}

const char* bound_name(diamond::BoundKind kind) { return diamond::bound_kind_name(kind); }

}  // namespace

extern "C" {

const char* diamond_version(void) { return "1.0.0"; }

const char* diamond_last_error(void) { return tl_error.c_str(); }

const char* diamond_status_name(diamond_status status) {
  switch (status) {
    case DIAMOND_OK: return "ok";
    case DIAMOND_ERR_NULL_POINTER: return "null_pointer";
    case DIAMOND_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case DIAMOND_ERR_OUT_OF_RANGE: return "out_of_range";
    case DIAMOND_ERR_NON_MONOTONE: return "non_monotone_aggregator";
    case DIAMOND_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case DIAMOND_ERR_INVALID_CUBE: return "invalid_cube";
    case DIAMOND_ERR_PARSE: return "parse_error";
    case DIAMOND_ERR_DUPLICATE: return "duplicate_cell";
    case DIAMOND_ERR_IO: return "io_error";
    case DIAMOND_ERR_BAD_MAGIC: return "bad_magic";
    case DIAMOND_ERR_VERSION_MISMATCH: return "version_mismatch";
    case DIAMOND_ERR_TRUNCATED: return "truncated";
    case DIAMOND_ERR_CHECKSUM: return "checksum_mismatch";
    case DIAMOND_ERR_UNDEFINED_BOUND: return "undefined_bound";
    case DIAMOND_ERR_DOMAIN: return "domain_error";
    case DIAMOND_ERR_TOO_LARGE: return "too_large";
    case DIAMOND_ERR_EMPTY_CUBE: return "empty_cube";
    case DIAMOND_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

// ---- cubes -----------------------------------------------------------------

void diamond_ingest_options_init(diamond_ingest_options* options) {
  if (!options) return;
  options->delimiter = ',';
  options->has_header = 0;
  options->dimension_columns = nullptr;
  options->dimension_column_count = 0;
  options->measure_column = -1;
  options->duplicates = DIAMOND_DUP_SUM;
  options->sort_dictionary = 0;
}

diamond_status diamond_cube_encode_text(const char* path, const diamond_ingest_options* options,
                                        diamond_cube** out) {
  DIAMOND_REQUIRE(path);
  DIAMOND_REQUIRE(out);
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw diamond::Error(diamond::ErrorCode::kIo, std::string("cannot open ") + path);
    auto table = diamond::encode_text(in, to_ingest(options), path);
    *out = new diamond_cube{std::move(table)};
  });
}

diamond_status diamond_cube_encode_buffer(const char* data, size_t size,
                                          const diamond_ingest_options* options,
                                          diamond_cube** out) {
  DIAMOND_REQUIRE(out);
  if (size > 0) DIAMOND_REQUIRE(data);
  return guarded([&] {
    std::istringstream in(std::string(data ? data : "", size));
    auto table = diamond::encode_text(in, to_ingest(options), "buffer");
    *out = new diamond_cube{std::move(table)};
  });
}

diamond_status diamond_cube_read(const char* path, diamond_cube** out) {
  DIAMOND_REQUIRE(path);
  DIAMOND_REQUIRE(out);
  return guarded([&] { *out = new diamond_cube{diamond::read_binary(path)}; });
}

diamond_status diamond_cube_write(const diamond_cube* cube, const char* path) {
  DIAMOND_REQUIRE(cube);
  DIAMOND_REQUIRE(path);
  return guarded([&] { diamond::write_binary(cube->table.cube, cube->table.dictionary, path); });
}

diamond_status diamond_cube_decode(const diamond_cube* cube, const char* path, char delimiter) {
  DIAMOND_REQUIRE(cube);
  return guarded([&] {
    if (!path) {
      diamond::decode(cube->table.cube, cube->table.dictionary, std::cout, delimiter);
      std::cout.flush();
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw diamond::Error(diamond::ErrorCode::kIo, std::string("cannot create ") + path);
    diamond::decode(cube->table.cube, cube->table.dictionary, file, delimiter);
    file.flush();
    if (!file) throw diamond::Error(diamond::ErrorCode::kIo, std::string("write failed: ") + path);
  });
}

diamond_status diamond_cube_from_cells(size_t dim_count, const uint32_t* cardinalities,
                                       uint64_t cell_count, const uint32_t* coords,
                                       const double* measures, diamond_cube** out) {
  DIAMOND_REQUIRE(out);
  if (dim_count > 0) DIAMOND_REQUIRE(cardinalities);
  if (cell_count > 0) {
    DIAMOND_REQUIRE(coords);
    DIAMOND_REQUIRE(measures);
  }
  return guarded([&] {
    std::vector<std::uint32_t> cards(cardinalities, cardinalities + dim_count);
    std::vector<diamond::ValueId> flat(coords, coords + cell_count * dim_count);
    std::vector<double> m(measures, measures + cell_count);
    diamond::EncodedCube cube(cards, std::move(flat), std::move(m), "cells");
    diamond::validate(cube);
    *out = new diamond_cube{{std::move(cube), diamond::Dictionary::identity(cards)}};
  });
}

diamond_status diamond_cube_generate(const diamond_synth_spec* spec, diamond_cube** out) {
  DIAMOND_REQUIRE(spec);
  DIAMOND_REQUIRE(out);
  return guarded([&] {
    diamond::SynthSpec s;
    switch (spec->distribution) {
      case DIAMOND_DIST_UNIFORM: s.distribution = diamond::Distribution::kUniform; break;
      case DIAMOND_DIST_POWER: s.distribution = diamond::Distribution::kPower; break;
      default:
        throw diamond::Error(diamond::ErrorCode::kInvalidArgument, "unknown distribution");
    }
    s.exponent = spec->exponent;
    s.cardinalities.assign(spec->dim_count, spec->cardinality);
    s.draws = spec->draws;
    s.seed = spec->seed;
    *out = new diamond_cube{diamond::generate(s)};
  });
}

void diamond_cube_free(diamond_cube* cube) { delete cube; }

size_t diamond_cube_dim_count(const diamond_cube* cube) {
  return cube ? cube->table.cube.dim_count() : 0;
}

uint64_t diamond_cube_cell_count(const diamond_cube* cube) {
  return cube ? cube->table.cube.cell_count() : 0;
}

uint32_t diamond_cube_cardinality(const diamond_cube* cube, size_t dim) {
  if (!cube || dim >= cube->table.cube.dim_count()) return 0;
  return cube->table.cube.cardinality(dim);
}

diamond_status diamond_cube_cell(const diamond_cube* cube, uint64_t cell, uint32_t* coords,
                                 double* measure) {
  DIAMOND_REQUIRE(cube);
  const auto& c = cube->table.cube;
  if (cell >= c.cell_count()) return fail(DIAMOND_ERR_OUT_OF_RANGE, "cell index out of range");
  if (coords) {
    auto x = c.coords(cell);
    std::copy(x.begin(), x.end(), coords);
  }
  if (measure) *measure = c.measure(cell);
  return DIAMOND_OK;
}

const char* diamond_cube_dimension_name(const diamond_cube* cube, size_t dim) {
  if (!cube || dim >= cube->table.dictionary.dimension_names.size()) return nullptr;
  return cube->table.dictionary.dimension_names[dim].c_str();
}

const char* diamond_cube_value_name(const diamond_cube* cube, size_t dim, uint32_t id) {
  if (!cube) return nullptr;
  const auto& values = cube->table.dictionary.values;
  if (dim >= values.size() || id >= values[dim].size()) return nullptr;
  return values[dim][id].c_str();
}

const char* diamond_cube_source_id(const diamond_cube* cube) {
  return cube ? cube->table.cube.source_id().c_str() : nullptr;
}

uint64_t diamond_cube_digest(const diamond_cube* cube) {
  return cube ? diamond::cube_digest(cube->table.cube) : 0;
}

diamond_status diamond_file_digest(const char* path, uint64_t* out) {
  DIAMOND_REQUIRE(path);
  DIAMOND_REQUIRE(out);
  return guarded([&] { *out = diamond::file_digest(path); });
}

diamond_status diamond_file_info(const char* path, size_t* dim_count, uint64_t* cell_count) {
  DIAMOND_REQUIRE(path);
  return guarded([&] {
    const auto header = diamond::read_binary_header(path);
    if (dim_count) *dim_count = header.dim_count();
    if (cell_count) *cell_count = header.cell_count;
  });
}

diamond_status diamond_cube_validate(const diamond_cube* cube) {
  DIAMOND_REQUIRE(cube);
  return guarded([&] { diamond::validate(cube->table.cube); });
}

diamond_status diamond_cube_stats(const diamond_cube* cube, diamond_stats* out) {
  DIAMOND_REQUIRE(cube);
  DIAMOND_REQUIRE(out);
  return guarded([&] {
    const auto s = diamond::cube_stats(cube->table.cube);
    *out = {s.cell_count, s.cardinality_sum, s.volume, s.density, s.measure_sum, s.measure_max};
  });
}

// ---- dicing ----------------------------------------------------------------

void diamond_dice_options_init(diamond_dice_options* options) {
  if (!options) return;
  options->algorithm = DIAMOND_ALGO_COMPACT;
  options->compaction_threshold = 0.5;
  options->canonical_order = 1;
  options->order_seed = 0;
  options->work_directory = nullptr;
}

diamond_status diamond_dice(const diamond_cube* cube, diamond_aggregator agg,
                            const double* thresholds, size_t count,
                            const diamond_dice_options* options, diamond_outcome** out) {
  DIAMOND_REQUIRE(cube);
  DIAMOND_REQUIRE(out);
  return guarded([&] {
    diamond_dice_options o;
    diamond_dice_options_init(&o);
    if (options) o = *options;
    const auto spec = to_spec(agg, thresholds, count);
    const auto config = to_config(o);
    diamond::DiceOutcome result;
    switch (o.algorithm) {
      case DIAMOND_ALGO_BASIC: result = diamond::dice_basic(cube->table.cube, spec, config); break;
      case DIAMOND_ALGO_COMPACT:
        result = diamond::dice_compacting(cube->table.cube, spec, config);
        break;
      case DIAMOND_ALGO_ORACLE:
        result = diamond::brute_force_diamond(cube->table.cube, spec);
        break;
      default: throw diamond::Error(diamond::ErrorCode::kInvalidArgument, "unknown algorithm");
    }
    *out = new diamond_outcome{std::move(result), cube->table.dictionary};
  });
}

diamond_status diamond_dice_file(const char* path, diamond_aggregator agg,
                                 const double* thresholds, size_t count,
                                 const diamond_dice_options* options, diamond_outcome** out) {
  DIAMOND_REQUIRE(path);
  DIAMOND_REQUIRE(out);
  return guarded([&] {
    diamond_dice_options o;
    diamond_dice_options_init(&o);
    if (options) o = *options;
    if (o.algorithm != DIAMOND_ALGO_COMPACT) {
      throw diamond::Error(diamond::ErrorCode::kInvalidArgument,
                           "file-backed dicing uses the compact algorithm");
    }
    auto result = diamond::dice_compacting_file(path, to_spec(agg, thresholds, count), to_config(o));
    const auto dict_path = diamond::dictionary_path(path);
    std::error_code ec;
    auto dict = std::filesystem::exists(dict_path, ec)
                    ? diamond::read_dictionary(dict_path)
                    : diamond::Dictionary::identity(result.retained_cells.cardinalities());
    *out = new diamond_outcome{std::move(result), std::move(dict)};
  });
}

diamond_status diamond_check_carats(const diamond_cube* cube, diamond_aggregator agg,
                                    const double* thresholds, size_t count, int* result) {
  DIAMOND_REQUIRE(cube);
  DIAMOND_REQUIRE(result);
  return guarded([&] {
    *result = diamond::check_carats(cube->table.cube, to_spec(agg, thresholds, count)) ? 1 : 0;
  });
}

void diamond_outcome_free(diamond_outcome* outcome) { delete outcome; }

uint64_t diamond_outcome_cell_count(const diamond_outcome* outcome) {
  return outcome ? outcome->outcome.retained_cells.cell_count() : 0;
}

uint64_t diamond_outcome_deleted_cells(const diamond_outcome* outcome) {
  return outcome ? outcome->outcome.deleted_cell_count : 0;
}

size_t diamond_outcome_major_iterations(const diamond_outcome* outcome) {
  return outcome ? outcome->outcome.major_iterations : 0;
}

size_t diamond_outcome_compactions(const diamond_outcome* outcome) {
  return outcome ? outcome->outcome.compactions : 0;
}

size_t diamond_outcome_dim_count(const diamond_outcome* outcome) {
  return outcome ? outcome->outcome.retained_values.size() : 0;
}

size_t diamond_outcome_value_count(const diamond_outcome* outcome, size_t dim) {
  if (!outcome || dim >= outcome->outcome.retained_values.size()) return 0;
  return outcome->outcome.retained_values[dim].size();
}

uint32_t diamond_outcome_value(const diamond_outcome* outcome, size_t dim, size_t index) {
  if (!outcome || dim >= outcome->outcome.retained_values.size()) return 0;
  const auto& v = outcome->outcome.retained_values[dim];
  return index < v.size() ? v[index] : 0;
}

double diamond_outcome_slice_aggregate(const diamond_outcome* outcome, size_t dim, size_t index) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!outcome || dim >= outcome->outcome.final_slice_aggregates.size()) return nan;
  const auto& v = outcome->outcome.final_slice_aggregates[dim];
  return index < v.size() ? v[index] : nan;
}

double diamond_outcome_min_slice_aggregate(const diamond_outcome* outcome) {
  return outcome ? outcome->outcome.min_slice_aggregate()
                 : std::numeric_limits<double>::quiet_NaN();
}

size_t diamond_outcome_trace_length(const diamond_outcome* outcome) {
  return outcome ? outcome->outcome.cells_after_iteration.size() : 0;
}

uint64_t diamond_outcome_trace(const diamond_outcome* outcome, size_t iteration) {
  if (!outcome || iteration >= outcome->outcome.cells_after_iteration.size()) return 0;
  return outcome->outcome.cells_after_iteration[iteration];
}

diamond_status diamond_outcome_cube(const diamond_outcome* outcome, diamond_cube** out) {
  DIAMOND_REQUIRE(outcome);
  DIAMOND_REQUIRE(out);
  return guarded(
      [&] { *out = new diamond_cube{{outcome->outcome.retained_cells, outcome->dictionary}}; });
}

// ---- bounds ----------------------------------------------------------------

diamond_status diamond_cube_bounds(const diamond_cube* cube, const double* thresholds,
                                   size_t threshold_count, diamond_bound* bounds,
                                   size_t capacity, size_t* count) {
  DIAMOND_REQUIRE(cube);
  DIAMOND_REQUIRE(count);
  if (capacity > 0) DIAMOND_REQUIRE(bounds);
  if (threshold_count > 0) DIAMOND_REQUIRE(thresholds);
  return guarded([&] {
    const auto reports = diamond::all_bounds(
        cube->table.cube, std::span<const double>(thresholds, threshold_count));
    for (size_t i = 0; i < reports.size() && i < capacity; ++i) {
      bounds[i] = {static_cast<diamond_bound_kind>(reports[i].kind), bound_name(reports[i].kind),
                   diamond::is_lower_bound(reports[i].kind) ? 1 : 0, reports[i].value};
    }
    *count = reports.size();
  });
}

diamond_status diamond_guarantees_nonempty(const diamond_cube* cube, const double* thresholds,
                                           size_t count, int* result) {
  DIAMOND_REQUIRE(cube);
  DIAMOND_REQUIRE(result);
  if (count > 0) DIAMOND_REQUIRE(thresholds);
  return guarded([&] {
    const auto& c = cube->table.cube;
    const auto cards = diamond::realized_cardinalities(c);
    *result = diamond::guarantees_nonempty(c.cell_count(),
                                           std::span<const double>(thresholds, count), cards)
                  ? 1
                  : 0;
  });
}

// ---- kappa -----------------------------------------------------------------

void diamond_kappa_options_init(diamond_kappa_options* options) {
  if (!options) return;
  options->algorithm = DIAMOND_ALGO_COMPACT;
  options->compaction_threshold = 0.5;
  options->reuse_diamonds = 1;
  options->relative_epsilon = 1e-9;
  options->confirm_exact = 1;
}

diamond_status diamond_kappa_find(const diamond_cube* cube, diamond_aggregator agg,
                                  const diamond_kappa_options* options, diamond_kappa** out) {
  DIAMOND_REQUIRE(cube);
  DIAMOND_REQUIRE(out);
  return guarded([&] {
    diamond_kappa_options o;
    diamond_kappa_options_init(&o);
    if (options) o = *options;
    diamond::KappaOptions k;
    switch (o.algorithm) {
      case DIAMOND_ALGO_BASIC: k.compacting = false; break;
      case DIAMOND_ALGO_COMPACT: k.compacting = true; break;
      default:
        throw diamond::Error(diamond::ErrorCode::kInvalidArgument,
                             "kappa search uses the basic or compact algorithm");
    }
    k.dicer.compaction_threshold = o.compaction_threshold;
    k.reuse_diamonds = o.reuse_diamonds != 0;
    k.relative_epsilon = o.relative_epsilon;
    k.confirm_exact = o.confirm_exact != 0;
    auto result = diamond::find_kappa(cube->table.cube, to_aggregator(agg), k);
    auto* r = new diamond_kappa{std::move(result), {}};
    r->diamond.outcome = r->result.diamond;
    r->diamond.dictionary = cube->table.dictionary;
    *out = r;
  });
}

void diamond_kappa_free(diamond_kappa* result) { delete result; }

double diamond_kappa_value(const diamond_kappa* result) {
  return result ? result->result.kappa : std::numeric_limits<double>::quiet_NaN();
}

double diamond_kappa_lower_bound(const diamond_kappa* result) {
  return result ? result->result.lower_bound_used : std::numeric_limits<double>::quiet_NaN();
}

double diamond_kappa_upper_bound(const diamond_kappa* result) {
  return result ? result->result.upper_bound_used : std::numeric_limits<double>::quiet_NaN();
}

int diamond_kappa_exact(const diamond_kappa* result) {
  return result && result->result.exact ? 1 : 0;
}

size_t diamond_kappa_dice_invocations(const diamond_kappa* result) {
  return result ? result->result.dice_invocations : 0;
}

size_t diamond_kappa_probe_count(const diamond_kappa* result) {
  return result ? result->result.probes.size() : 0;
}

diamond_status diamond_kappa_probe(const diamond_kappa* result, size_t index, double* k,
                                   int* nonempty, uint64_t* cells_remaining) {
  DIAMOND_REQUIRE(result);
  if (index >= result->result.probes.size()) {
    return fail(DIAMOND_ERR_OUT_OF_RANGE, "probe index out of range");
  }
  const auto& p = result->result.probes[index];
  if (k) *k = p.k;
  if (nonempty) *nonempty = p.nonempty ? 1 : 0;
  if (cells_remaining) *cells_remaining = p.cells_remaining;
  return DIAMOND_OK;
}

const diamond_outcome* diamond_kappa_diamond(const diamond_kappa* result) {
  return result ? &result->diamond : nullptr;
}

}  // extern "C"
