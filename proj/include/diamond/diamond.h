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

#ifndef DIAMOND_DIAMOND_H_
#define DIAMOND_DIAMOND_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DIAMOND_BUILDING_LIBRARY)
#define DIAMOND_API __attribute__((visibility("default")))
#else
#define DIAMOND_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns a status; on failure diamond_last_error() holds a
 * message for the calling thread until its next failing call. */
typedef enum diamond_status {
  DIAMOND_OK = 0,
  DIAMOND_ERR_NULL_POINTER = 1,
  DIAMOND_ERR_INVALID_ARGUMENT = 2,
  DIAMOND_ERR_OUT_OF_RANGE = 3,
  DIAMOND_ERR_NON_MONOTONE = 4,
  DIAMOND_ERR_DIMENSION_MISMATCH = 5,
  DIAMOND_ERR_INVALID_CUBE = 6,
  DIAMOND_ERR_PARSE = 7,
  DIAMOND_ERR_DUPLICATE = 8,
  DIAMOND_ERR_IO = 9,
  DIAMOND_ERR_BAD_MAGIC = 10,
  DIAMOND_ERR_VERSION_MISMATCH = 11,
  DIAMOND_ERR_TRUNCATED = 12,
  DIAMOND_ERR_CHECKSUM = 13,
  DIAMOND_ERR_UNDEFINED_BOUND = 14,
  DIAMOND_ERR_DOMAIN = 15,
  DIAMOND_ERR_TOO_LARGE = 16,
  DIAMOND_ERR_EMPTY_CUBE = 17,
  DIAMOND_ERR_INTERNAL = 99
} diamond_status;

typedef enum diamond_aggregator {
  DIAMOND_COUNT = 0,
  DIAMOND_SUM = 1
} diamond_aggregator;

typedef enum diamond_algorithm {
  DIAMOND_ALGO_BASIC = 0,
  DIAMOND_ALGO_COMPACT = 1,
  DIAMOND_ALGO_ORACLE = 2
} diamond_algorithm;

typedef enum diamond_duplicates {
  DIAMOND_DUP_SUM = 0,
  DIAMOND_DUP_COUNT = 1,
  DIAMOND_DUP_ERROR = 2
} diamond_duplicates;

typedef enum diamond_distribution {
  DIAMOND_DIST_UNIFORM = 0,
  DIAMOND_DIST_POWER = 1
} diamond_distribution;

typedef struct diamond_cube diamond_cube;
typedef struct diamond_outcome diamond_outcome;
typedef struct diamond_kappa diamond_kappa;

DIAMOND_API const char* diamond_version(void);
DIAMOND_API const char* diamond_last_error(void);
DIAMOND_API const char* diamond_status_name(diamond_status status);

/* ---- cubes ---------------------------------------------------------- */

typedef struct diamond_ingest_options {
  char delimiter;
  int has_header;
  /* Column indices of the dimensions; NULL with zero count means every
   * column except the measure. */
  const size_t* dimension_columns;
  size_t dimension_column_count;
  /* Negative: no measure column, every record counts 1. */
  int64_t measure_column;
  diamond_duplicates duplicates;
  int sort_dictionary;
} diamond_ingest_options;

DIAMOND_API void diamond_ingest_options_init(diamond_ingest_options* options);

DIAMOND_API diamond_status diamond_cube_encode_text(const char* path,
                                                    const diamond_ingest_options* options,
                                                    diamond_cube** out);
DIAMOND_API diamond_status diamond_cube_encode_buffer(const char* data, size_t size,
                                                      const diamond_ingest_options* options,
                                                      diamond_cube** out);

/* Reads a binary cube and its dictionary sidecar, when present. */
DIAMOND_API diamond_status diamond_cube_read(const char* path, diamond_cube** out);
DIAMOND_API diamond_status diamond_cube_write(const diamond_cube* cube, const char* path);
/* Writes the cube as delimited text; path NULL writes to stdout. */
DIAMOND_API diamond_status diamond_cube_decode(const diamond_cube* cube, const char* path,
                                               char delimiter);

/* coords holds cell_count * dim_count ids, row-major. */
DIAMOND_API diamond_status diamond_cube_from_cells(size_t dim_count,
                                                   const uint32_t* cardinalities,
                                                   uint64_t cell_count,
                                                   const uint32_t* coords,
                                                   const double* measures,
                                                   diamond_cube** out);

typedef struct diamond_synth_spec {
  diamond_distribution distribution;
  double exponent;
  size_t dim_count;
  uint32_t cardinality;
  uint64_t draws;
  uint64_t seed;
} diamond_synth_spec;

DIAMOND_API diamond_status diamond_cube_generate(const diamond_synth_spec* spec,
                                                 diamond_cube** out);

DIAMOND_API void diamond_cube_free(diamond_cube* cube);

DIAMOND_API size_t diamond_cube_dim_count(const diamond_cube* cube);
DIAMOND_API uint64_t diamond_cube_cell_count(const diamond_cube* cube);
DIAMOND_API uint32_t diamond_cube_cardinality(const diamond_cube* cube, size_t dim);
DIAMOND_API diamond_status diamond_cube_cell(const diamond_cube* cube, uint64_t cell,
                                             uint32_t* coords, double* measure);
/* Returned strings live as long as the cube. */
DIAMOND_API const char* diamond_cube_dimension_name(const diamond_cube* cube, size_t dim);
DIAMOND_API const char* diamond_cube_value_name(const diamond_cube* cube, size_t dim,
                                                uint32_t id);
DIAMOND_API const char* diamond_cube_source_id(const diamond_cube* cube);
/* Checksum the cube's binary file carries. */
DIAMOND_API uint64_t diamond_cube_digest(const diamond_cube* cube);
DIAMOND_API diamond_status diamond_file_digest(const char* path, uint64_t* out);
/* Header of a binary cube file; either output may be NULL. */
DIAMOND_API diamond_status diamond_file_info(const char* path, size_t* dim_count,
                                             uint64_t* cell_count);
DIAMOND_API diamond_status diamond_cube_validate(const diamond_cube* cube);

typedef struct diamond_stats {
  uint64_t cell_count;
  uint64_t cardinality_sum;
  double volume;
  double density;
  double measure_sum;
  double measure_max;
} diamond_stats;

DIAMOND_API diamond_status diamond_cube_stats(const diamond_cube* cube, diamond_stats* out);

/* ---- dicing --------------------------------------------------------- */

typedef struct diamond_dice_options {
  diamond_algorithm algorithm;
  double compaction_threshold;
  int canonical_order;
  uint64_t order_seed;
  /* Scratch directory for file-backed compaction; NULL for the default. */
  const char* work_directory;
} diamond_dice_options;

DIAMOND_API void diamond_dice_options_init(diamond_dice_options* options);

/* thresholds holds one carat per dimension. */
DIAMOND_API diamond_status diamond_dice(const diamond_cube* cube, diamond_aggregator agg,
                                        const double* thresholds, size_t count,
                                        const diamond_dice_options* options,
                                        diamond_outcome** out);
/* Streams a binary cube file instead of loading it; only the compact
 * algorithm is available. */
DIAMOND_API diamond_status diamond_dice_file(const char* path, diamond_aggregator agg,
                                             const double* thresholds, size_t count,
                                             const diamond_dice_options* options,
                                             diamond_outcome** out);
DIAMOND_API diamond_status diamond_check_carats(const diamond_cube* cube,
                                                diamond_aggregator agg,
                                                const double* thresholds, size_t count,
                                                int* result);

DIAMOND_API void diamond_outcome_free(diamond_outcome* outcome);

DIAMOND_API uint64_t diamond_outcome_cell_count(const diamond_outcome* outcome);
DIAMOND_API uint64_t diamond_outcome_deleted_cells(const diamond_outcome* outcome);
DIAMOND_API size_t diamond_outcome_major_iterations(const diamond_outcome* outcome);
DIAMOND_API size_t diamond_outcome_compactions(const diamond_outcome* outcome);
DIAMOND_API size_t diamond_outcome_dim_count(const diamond_outcome* outcome);
/* Number of retained values in dim, the s_i of the diamond. */
DIAMOND_API size_t diamond_outcome_value_count(const diamond_outcome* outcome, size_t dim);
DIAMOND_API uint32_t diamond_outcome_value(const diamond_outcome* outcome, size_t dim,
                                           size_t index);
DIAMOND_API double diamond_outcome_slice_aggregate(const diamond_outcome* outcome, size_t dim,
                                                   size_t index);
/* +inf for an empty diamond. */
DIAMOND_API double diamond_outcome_min_slice_aggregate(const diamond_outcome* outcome);
/* Cells remaining after each major iteration. */
DIAMOND_API size_t diamond_outcome_trace_length(const diamond_outcome* outcome);
DIAMOND_API uint64_t diamond_outcome_trace(const diamond_outcome* outcome, size_t iteration);
/* Copies the retained cells, with the source dictionary, into a new cube. */
DIAMOND_API diamond_status diamond_outcome_cube(const diamond_outcome* outcome,
                                                diamond_cube** out);

/* ---- bounds --------------------------------------------------------- */

typedef enum diamond_bound_kind {
  DIAMOND_BOUND_COUNT_KAPPA_LOWER = 0,
  DIAMOND_BOUND_COUNT_CARAT_UPPER = 1,
  DIAMOND_BOUND_MIN_SIZE_FOR_CARATS = 2,
  DIAMOND_BOUND_MAX_CELLS_WITHOUT_DIAMOND = 3,
  DIAMOND_BOUND_SUM_KAPPA_LOWER = 4,
  DIAMOND_BOUND_SUM_KAPPA_UPPER = 5,
  DIAMOND_BOUND_SUM_LOWER_OF_DIAMOND = 6
} diamond_bound_kind;

typedef struct diamond_bound {
  diamond_bound_kind kind;
  /* Static string such as "count_kappa_lower". */
  const char* name;
  int is_lower;
  double value;
} diamond_bound;

/* Fills up to capacity bounds and stores the number available in *count.
 * thresholds may be NULL; the carat-dependent bounds are then skipped. */
DIAMOND_API diamond_status diamond_cube_bounds(const diamond_cube* cube,
                                               const double* thresholds, size_t threshold_count,
                                               diamond_bound* bounds, size_t capacity,
                                               size_t* count);
DIAMOND_API diamond_status diamond_guarantees_nonempty(const diamond_cube* cube,
                                                       const double* thresholds, size_t count,
                                                       int* result);

/* ---- kappa ---------------------------------------------------------- */

typedef struct diamond_kappa_options {
  diamond_algorithm algorithm; /* basic or compact */
  double compaction_threshold;
  int reuse_diamonds;
  double relative_epsilon;
  int confirm_exact;
} diamond_kappa_options;

DIAMOND_API void diamond_kappa_options_init(diamond_kappa_options* options);

DIAMOND_API diamond_status diamond_kappa_find(const diamond_cube* cube, diamond_aggregator agg,
                                              const diamond_kappa_options* options,
                                              diamond_kappa** out);
DIAMOND_API void diamond_kappa_free(diamond_kappa* result);

DIAMOND_API double diamond_kappa_value(const diamond_kappa* result);
DIAMOND_API double diamond_kappa_lower_bound(const diamond_kappa* result);
DIAMOND_API double diamond_kappa_upper_bound(const diamond_kappa* result);
DIAMOND_API int diamond_kappa_exact(const diamond_kappa* result);
DIAMOND_API size_t diamond_kappa_dice_invocations(const diamond_kappa* result);
DIAMOND_API size_t diamond_kappa_probe_count(const diamond_kappa* result);
DIAMOND_API diamond_status diamond_kappa_probe(const diamond_kappa* result, size_t index,
                                               double* k, int* nonempty,
                                               uint64_t* cells_remaining);
/* Borrowed; valid while result lives. */
DIAMOND_API const diamond_outcome* diamond_kappa_diamond(const diamond_kappa* result);

#ifdef __cplusplus
}
#endif

#endif /* DIAMOND_DIAMOND_H_ */
