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

#include <sys/resource.h>

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diamond/diamond.h"
#include "report.hpp"

namespace {

using diamond::cli::RunReport;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(diamond_status s) {
  switch (s) {
    case DIAMOND_OK: return kExitOk;
    case DIAMOND_ERR_NON_MONOTONE:
    case DIAMOND_ERR_DOMAIN:
    case DIAMOND_ERR_UNDEFINED_BOUND: return kExitDomain;
    case DIAMOND_ERR_IO: return kExitIo;
    default: return kExitInput;
  }
}

void check(diamond_status s) {
  if (s != DIAMOND_OK) {
    throw Failure{exit_code_for(s),
                  std::string(diamond_status_name(s)) + ": " + diamond_last_error()};
  }
}

struct CubeDeleter {
  void operator()(diamond_cube* c) const { diamond_cube_free(c); }
};
struct OutcomeDeleter {
  void operator()(diamond_outcome* o) const { diamond_outcome_free(o); }
};
struct KappaDeleter {
  void operator()(diamond_kappa* k) const { diamond_kappa_free(k); }
};
using CubePtr = std::unique_ptr<diamond_cube, CubeDeleter>;
using OutcomePtr = std::unique_ptr<diamond_outcome, OutcomeDeleter>;
using KappaPtr = std::unique_ptr<diamond_kappa, KappaDeleter>;

CubePtr load_cube(const std::string& path) {
  diamond_cube* raw = nullptr;
  check(diamond_cube_read(path.c_str(), &raw));
  return CubePtr(raw);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::string join_list(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

std::uint64_t peak_rss_kib() {
  struct rusage usage {};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<std::uint64_t>(usage.ru_maxrss);
}

diamond_aggregator parse_aggregator(const std::string& name) {
  if (name == "count") return DIAMOND_COUNT;
  if (name == "sum") return DIAMOND_SUM;
  throw Failure{kExitInput, "unknown aggregator: " + name};
}

diamond_algorithm parse_algorithm(const std::string& name) {
  if (name == "basic") return DIAMOND_ALGO_BASIC;
  if (name == "compact") return DIAMOND_ALGO_COMPACT;
  if (name == "oracle") return DIAMOND_ALGO_ORACLE;
  throw Failure{kExitInput, "unknown algorithm: " + name};
}

char parse_delimiter(const std::string& text) {
  if (text == "\\t" || text == "tab") return '\t';
  if (text.size() != 1) throw Failure{kExitInput, "delimiter must be one character"};
  return text[0];
}

// Common head of every report.
struct Run {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  RunReport report;
  Run(const std::string& title, const std::string& command) : report(title) {
    report.add("command", command);
  }
  void finish(std::ostream& out) {
    const auto ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    report.add("wall_ms", RunReport::format_real(std::round(ms * 1000.0) / 1000.0), "wall-clock ms");
    report.add("peak_rss_kib", peak_rss_kib(), "peak memory KiB");
    report.print(out);
  }
};

void add_input(RunReport& report, const std::string& path) {
  std::uint64_t digest = 0;
  check(diamond_file_digest(path.c_str(), &digest));
  report.add("input", path);
  report.add("input_digest", hex64(digest), "input digest");
}

// Carat vector from --carats or a uniform --k.
std::vector<double> resolve_carats(const std::vector<double>& carats, std::optional<double> k,
                                   std::size_t dims) {
  if (!carats.empty() && k) throw Failure{kExitInput, "give either --carats or --k"};
  if (k) return std::vector<double>(dims, *k);
  if (carats.empty()) throw Failure{kExitInput, "carats missing: give --carats or --k"};
  if (carats.size() != dims) {
    throw Failure{kExitInput, "expected " + std::to_string(dims) + " carats, got " +
                                  std::to_string(carats.size())};
  }
  return carats;
}

void add_outcome(RunReport& report, const diamond_outcome* o, std::uint64_t cells_in) {
  report.add("cells_in", cells_in, "|C| in");
  report.add("cells_out", diamond_outcome_cell_count(o), "|C| out");
  std::vector<std::string> shape;
  for (std::size_t i = 0; i < diamond_outcome_dim_count(o); ++i) {
    shape.push_back(std::to_string(diamond_outcome_value_count(o, i)));
  }
  report.add("shape", join_list(shape), "s_i");
  report.add("major_iterations", diamond_outcome_major_iterations(o), "I");
  report.add("compactions", diamond_outcome_compactions(o));
  const double min_agg = diamond_outcome_min_slice_aggregate(o);
  if (std::isfinite(min_agg)) {
    report.add_real("min_slice_aggregate", min_agg, "min slice aggregate");
  }
  if (cells_in > 0) {
    report.add_real(
        "capture", static_cast<double>(diamond_outcome_cell_count(o)) / cells_in, "captured");
  }
}

void emit_outcome(const diamond_outcome* o, const std::string& mode, char delimiter) {
  if (mode == "stats") return;
  diamond_cube* raw = nullptr;
  check(diamond_outcome_cube(o, &raw));
  CubePtr cube(raw);
  if (mode == "cells") {
    check(diamond_cube_decode(cube.get(), nullptr, delimiter));
    return;
  }
  // values: dim, value, slice aggregate
  std::cout << "dimension\tvalue\taggregate\n";
  for (std::size_t i = 0; i < diamond_outcome_dim_count(o); ++i) {
    const char* dim_name = diamond_cube_dimension_name(cube.get(), i);
    for (std::size_t j = 0; j < diamond_outcome_value_count(o, i); ++j) {
      const char* value = diamond_cube_value_name(cube.get(), i, diamond_outcome_value(o, i, j));
      std::cout << (dim_name ? dim_name : std::to_string(i)) << '\t'
                << (value ? value : std::to_string(diamond_outcome_value(o, i, j))) << '\t'
                << RunReport::format_real(diamond_outcome_slice_aggregate(o, i, j)) << '\n';
    }
  }
}

void write_outcome(const diamond_outcome* o, const std::string& path) {
  diamond_cube* raw = nullptr;
  check(diamond_outcome_cube(o, &raw));
  CubePtr cube(raw);
  check(diamond_cube_write(cube.get(), path.c_str()));
}

void write_trace(const diamond_outcome* o, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Failure{kExitIo, "cannot create " + path};
  for (std::size_t i = 0; i < diamond_outcome_trace_length(o); ++i) {
    out << (i + 1) << '\t' << diamond_outcome_trace(o, i) << '\n';
  }
  if (!out.flush()) throw Failure{kExitIo, "write failed: " + path};
}

std::string echo_command(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diamond dicing over sparse fact tables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(diamond_version()));
  const std::string command = echo_command(argc, argv);

  // encode
  auto* encode = app.add_subcommand("encode", "Encode a delimited fact table as a binary cube");
  std::string enc_input, enc_output, enc_delim = ",", enc_dup = "sum";
  bool enc_header = false, enc_sort = false;
  std::vector<std::size_t> enc_dims;
  std::optional<std::int64_t> enc_measure;
  encode->add_option("input", enc_input, "Text input")->required();
  encode->add_option("-o,--output", enc_output, "Binary cube to write")->required();
  encode->add_option("--delimiter", enc_delim, "Field delimiter (\\t for tab)");
  encode->add_flag("--header", enc_header, "First record names the columns");
  encode->add_option("--dims", enc_dims, "Dimension columns, 0-based")->delimiter(',');
  encode->add_option("--measure", enc_measure, "Measure column, 0-based; omit to count rows");
  encode->add_option("--dup", enc_dup, "Duplicate coordinates: sum, count or error")
      ->check(CLI::IsMember({"sum", "count", "error"}));
  encode->add_flag("--sort-dictionary", enc_sort, "Assign ids in string order");

  // dice
  auto* dice = app.add_subcommand("dice", "Compute the diamond for given carats");
  std::string dice_input, dice_agg = "count", dice_algo = "compact", dice_emit = "stats",
                          dice_output, dice_trace, dice_delim = ",", dice_work;
  std::vector<double> dice_carats;
  std::optional<double> dice_k;
  double dice_tau = 0.5;
  bool dice_stream = false;
  std::optional<std::uint64_t> dice_shuffle;
  dice->add_option("cube", dice_input, "Binary cube")->required();
  dice->add_option("--carats", dice_carats, "Per-dimension carats k1,...,kd")->delimiter(',');
  dice->add_option("--k", dice_k, "Uniform carat for every dimension");
  dice->add_option("--agg", dice_agg, "Aggregator")->check(CLI::IsMember({"count", "sum"}));
  dice->add_option("--algo", dice_algo, "Algorithm")
      ->check(CLI::IsMember({"basic", "compact", "oracle"}));
  dice->add_option("--tau", dice_tau, "Compaction threshold in [0, 1)");
  dice->add_flag("--stream", dice_stream, "Stream the cube file instead of loading it");
  dice->add_option("--work-dir", dice_work, "Scratch directory for --stream");
  dice->add_option("--shuffle-seed", dice_shuffle, "Visit dimensions and values in random order");
  dice->add_option("--emit", dice_emit, "Print cells, values or stats only")
      ->check(CLI::IsMember({"cells", "values", "stats"}));
  dice->add_option("--delimiter", dice_delim, "Delimiter for --emit cells");
  dice->add_option("-o,--output", dice_output, "Write the diamond as a binary cube");
  dice->add_option("--trace-iterations", dice_trace, "Write cells remaining per iteration (TSV)");

  // kappa
  auto* kappa = app.add_subcommand("kappa", "Find the largest carat with a non-empty diamond");
  std::string kappa_input, kappa_agg = "count", kappa_algo = "compact", kappa_output;
  bool kappa_fresh = false;
  kappa->add_option("cube", kappa_input, "Binary cube")->required();
  kappa->add_option("--agg", kappa_agg, "Aggregator")->check(CLI::IsMember({"count", "sum"}));
  kappa->add_option("--algo", kappa_algo, "Algorithm")
      ->check(CLI::IsMember({"basic", "compact"}));
  kappa->add_flag("--no-reuse", kappa_fresh, "Dice the original cube on every probe");
  kappa->add_option("-o,--output", kappa_output, "Write the kappa-diamond as a binary cube");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic cube");
  std::string gen_dist = "uniform", gen_output;
  std::size_t gen_dims = 3;
  std::uint32_t gen_card = 0;
  std::uint64_t gen_draws = 0, gen_seed = 0;
  gen->add_option("--dist", gen_dist, "uniform or pow:EXPONENT");
  gen->add_option("--dims", gen_dims, "Dimension count")->check(CLI::PositiveNumber);
  gen->add_option("--card", gen_card, "Nominal cardinality per dimension")->required();
  gen->add_option("--draws", gen_draws, "Number of tuples drawn")->required();
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("-o,--output", gen_output, "Binary cube to write")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Cube statistics and bounds");
  std::string stats_input;
  std::vector<double> stats_carats;
  std::optional<double> stats_k;
  stats->add_option("cube", stats_input, "Binary cube")->required();
  stats->add_option("--carats", stats_carats, "Carats for carat-dependent bounds")
      ->delimiter(',');
  stats->add_option("--k", stats_k, "Uniform carat for carat-dependent bounds");

  // decode
  auto* decode = app.add_subcommand("decode", "Write a binary cube as delimited text");
  std::string dec_input, dec_output, dec_delim = ",";
  decode->add_option("cube", dec_input, "Binary cube")->required();
  decode->add_option("-o,--output", dec_output, "Text output (stdout when omitted)");
  decode->add_option("--delimiter", dec_delim, "Field delimiter");

  // oracle: brute force, for debugging small cubes
  auto* oracle = app.add_subcommand("oracle", "Brute-force diamond of a tiny cube");
  oracle->group("");
  std::string orc_input, orc_agg = "count";
  std::vector<double> orc_carats;
  std::optional<double> orc_k;
  oracle->add_option("cube", orc_input)->required();
  oracle->add_option("--carats", orc_carats)->delimiter(',');
  oracle->add_option("--k", orc_k);
  oracle->add_option("--agg", orc_agg)->check(CLI::IsMember({"count", "sum"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*encode) {
      Run run("diamond encode", command);
      diamond_ingest_options opts;
      diamond_ingest_options_init(&opts);
      opts.delimiter = parse_delimiter(enc_delim);
      opts.has_header = enc_header;
      opts.dimension_columns = enc_dims.empty() ? nullptr : enc_dims.data();
      opts.dimension_column_count = enc_dims.size();
      opts.measure_column = enc_measure.value_or(-1);
      opts.duplicates = enc_dup == "sum"     ? DIAMOND_DUP_SUM
                        : enc_dup == "count" ? DIAMOND_DUP_COUNT
                                             : DIAMOND_DUP_ERROR;
      opts.sort_dictionary = enc_sort;
      diamond_cube* raw = nullptr;
      check(diamond_cube_encode_text(enc_input.c_str(), &opts, &raw));
      CubePtr cube(raw);
      check(diamond_cube_write(cube.get(), enc_output.c_str()));
      add_input(run.report, enc_input);
      run.report.add("output", enc_output);
      run.report.add("cells", diamond_cube_cell_count(cube.get()), "|C|");
      std::vector<std::string> cards;
      for (std::size_t i = 0; i < diamond_cube_dim_count(cube.get()); ++i) {
        cards.push_back(std::to_string(diamond_cube_cardinality(cube.get(), i)));
      }
      run.report.add("cardinalities", join_list(cards), "n_i");
      run.report.add("output_digest", hex64(diamond_cube_digest(cube.get())), "cube digest");
      run.finish(std::cout);
    } else if (*dice) {
      Run run("diamond dice", command);
      add_input(run.report, dice_input);
      const auto agg = parse_aggregator(dice_agg);
      diamond_dice_options opts;
      diamond_dice_options_init(&opts);
      opts.algorithm = parse_algorithm(dice_algo);
      opts.compaction_threshold = dice_tau;
      if (dice_shuffle) {
        opts.canonical_order = 0;
        opts.order_seed = *dice_shuffle;
      }
      if (!dice_work.empty()) opts.work_directory = dice_work.c_str();
      diamond_outcome* raw = nullptr;
      std::uint64_t cells_in = 0;
      std::vector<double> carats;
      if (dice_stream) {
        if (opts.algorithm != DIAMOND_ALGO_COMPACT) {
          throw Failure{kExitInput, "--stream requires --algo compact"};
        }
        std::size_t dims = 0;
        check(diamond_file_info(dice_input.c_str(), &dims, &cells_in));
        carats = resolve_carats(dice_carats, dice_k, dims);
        check(diamond_dice_file(dice_input.c_str(), agg, carats.data(), carats.size(), &opts,
                                &raw));
      } else {
        auto cube = load_cube(dice_input);
        cells_in = diamond_cube_cell_count(cube.get());
        carats = resolve_carats(dice_carats, dice_k, diamond_cube_dim_count(cube.get()));
        check(diamond_dice(cube.get(), agg, carats.data(), carats.size(), &opts, &raw));
      }
      OutcomePtr outcome(raw);
      emit_outcome(outcome.get(), dice_emit, parse_delimiter(dice_delim));
      if (!dice_output.empty()) write_outcome(outcome.get(), dice_output);
      if (!dice_trace.empty()) write_trace(outcome.get(), dice_trace);
      run.report.add("aggregator", dice_agg);
      run.report.add("algorithm", dice_algo + (dice_stream ? "/stream" : ""));
      std::vector<std::string> ks;
      for (double k : carats) ks.push_back(RunReport::format_real(k));
      run.report.add("carats", join_list(ks), "k_i");
      add_outcome(run.report, outcome.get(), cells_in);
      if (!dice_output.empty()) run.report.add("output", dice_output);
      run.finish(std::cout);
    } else if (*kappa) {
      Run run("diamond kappa", command);
      add_input(run.report, kappa_input);
      auto cube = load_cube(kappa_input);
      diamond_kappa_options opts;
      diamond_kappa_options_init(&opts);
      opts.algorithm = parse_algorithm(kappa_algo);
      opts.reuse_diamonds = kappa_fresh ? 0 : 1;
      diamond_kappa* raw = nullptr;
      check(diamond_kappa_find(cube.get(), parse_aggregator(kappa_agg), &opts, &raw));
      KappaPtr result(raw);
      const diamond_outcome* d = diamond_kappa_diamond(result.get());
      if (!kappa_output.empty()) write_outcome(d, kappa_output);
      run.report.add("aggregator", kappa_agg);
      run.report.add_real("kappa", diamond_kappa_value(result.get()), "kappa");
      run.report.add("exact", diamond_kappa_exact(result.get()) ? "yes" : "no");
      run.report.add_real("lower_bound", diamond_kappa_lower_bound(result.get()), "lower bound");
      run.report.add_real("upper_bound", diamond_kappa_upper_bound(result.get()), "upper bound");
      add_outcome(run.report, d, diamond_cube_cell_count(cube.get()));
      run.report.add("dice_invocations", diamond_kappa_dice_invocations(result.get()),
                     "dice invocations");
      const std::size_t probes = diamond_kappa_probe_count(result.get());
      run.report.add("probes", probes);
      for (std::size_t i = 0; i < probes; ++i) {
        double k = 0;
        int nonempty = 0;
        std::uint64_t cells = 0;
        check(diamond_kappa_probe(result.get(), i, &k, &nonempty, &cells));
        const std::string p = "probe." + std::to_string(i + 1);
        run.report.add(p, RunReport::format_real(k) + (nonempty ? " nonempty " : " empty ") +
                              std::to_string(cells),
                       "probe " + std::to_string(i + 1) + " (k, result, cells)");
      }
      if (!kappa_output.empty()) run.report.add("output", kappa_output);
      run.finish(std::cout);
    } else if (*gen) {
      Run run("diamond gen", command);
      diamond_synth_spec spec{DIAMOND_DIST_UNIFORM, 0.0, gen_dims, gen_card, gen_draws, gen_seed};
      if (gen_dist.rfind("pow:", 0) == 0) {
        spec.distribution = DIAMOND_DIST_POWER;
        try {
          std::size_t used = 0;
          spec.exponent = std::stod(gen_dist.substr(4), &used);
          if (used != gen_dist.size() - 4) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw Failure{kExitInput, "bad exponent in --dist " + gen_dist};
        }
      } else if (gen_dist != "uniform") {
        throw Failure{kExitInput, "--dist must be uniform or pow:EXPONENT"};
      }
      diamond_cube* raw = nullptr;
      check(diamond_cube_generate(&spec, &raw));
      CubePtr cube(raw);
      check(diamond_cube_write(cube.get(), gen_output.c_str()));
      std::uint64_t digest = 0;
      check(diamond_file_digest(gen_output.c_str(), &digest));
      run.report.add("source", diamond_cube_source_id(cube.get()));
      run.report.add("output", gen_output);
      run.report.add("output_digest", hex64(digest), "output digest");
      run.report.add("cells", diamond_cube_cell_count(cube.get()), "|C|");
      std::vector<std::string> cards;
      for (std::size_t i = 0; i < diamond_cube_dim_count(cube.get()); ++i) {
        cards.push_back(std::to_string(diamond_cube_cardinality(cube.get(), i)));
      }
      run.report.add("cardinalities", join_list(cards), "n_i");
      run.finish(std::cout);
    } else if (*stats) {
      Run run("diamond stats", command);
      add_input(run.report, stats_input);
      auto cube = load_cube(stats_input);
      if (diamond_cube_cell_count(cube.get()) == 0) {
        throw Failure{kExitInput, "empty_cube: the cube has no cells"};
      }
      std::vector<double> carats;
      if (!stats_carats.empty() || stats_k) {
        carats = resolve_carats(stats_carats, stats_k, diamond_cube_dim_count(cube.get()));
      }
      diamond_stats s{};
      check(diamond_cube_stats(cube.get(), &s));
      run.report.add("cells", s.cell_count, "|C|");
      std::vector<std::string> cards;
      for (std::size_t i = 0; i < diamond_cube_dim_count(cube.get()); ++i) {
        cards.push_back(std::to_string(diamond_cube_cardinality(cube.get(), i)));
      }
      run.report.add("cardinalities", join_list(cards), "n_i");
      run.report.add("cardinality_sum", s.cardinality_sum, "sum n_i");
      run.report.add_real("volume", s.volume);
      run.report.add_real("density", s.density);
      run.report.add_real("measure_sum", s.measure_sum, "measure sum");
      run.report.add_real("measure_max", s.measure_max, "measure max");
      std::vector<diamond_bound> bounds(16);
      std::size_t count = 0;
      check(diamond_cube_bounds(cube.get(), carats.empty() ? nullptr : carats.data(),
                                carats.size(), bounds.data(), bounds.size(), &count));
      for (std::size_t i = 0; i < count && i < bounds.size(); ++i) {
        run.report.add_real(std::string("bound.") + bounds[i].name, bounds[i].value,
                            std::string(bounds[i].name) +
                                (bounds[i].is_lower ? " (lower)" : " (upper)"));
      }
      if (!carats.empty()) {
        int guaranteed = 0;
        check(diamond_guarantees_nonempty(cube.get(), carats.data(), carats.size(),
                                          &guaranteed));
        run.report.add("guarantees_nonempty", guaranteed ? "yes" : "no",
                       "non-empty guaranteed");
      }
      run.finish(std::cout);
    } else if (*decode) {
      auto cube = load_cube(dec_input);
      check(diamond_cube_decode(cube.get(), dec_output.empty() ? nullptr : dec_output.c_str(),
                                parse_delimiter(dec_delim)));
    } else if (*oracle) {
      Run run("diamond oracle", command);
      add_input(run.report, orc_input);
      auto cube = load_cube(orc_input);
      const auto carats = resolve_carats(orc_carats, orc_k, diamond_cube_dim_count(cube.get()));
      diamond_dice_options opts;
      diamond_dice_options_init(&opts);
      opts.algorithm = DIAMOND_ALGO_ORACLE;
      diamond_outcome* raw = nullptr;
      check(diamond_dice(cube.get(), parse_aggregator(orc_agg), carats.data(), carats.size(),
                         &opts, &raw));
      OutcomePtr outcome(raw);
      emit_outcome(outcome.get(), "cells", ',');
      add_outcome(run.report, outcome.get(), diamond_cube_cell_count(cube.get()));
      run.finish(std::cout);
    }
  } catch (const Failure& f) {
    std::cerr << "diamond: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "diamond: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
