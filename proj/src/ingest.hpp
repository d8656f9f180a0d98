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
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cube.hpp"

namespace diamond {

// Per-dimension bijection between attribute strings and dense ids; the id
// of a string is its position in `values[dim]`.
struct Dictionary {
  std::vector<std::string> dimension_names;
  std::string measure_name = "measure";
  std::vector<std::vector<std::string>> values;

  // Dictionary whose strings are the decimal ids themselves.
  static Dictionary identity(std::span<const std::uint32_t> cardinalities);

  friend bool operator==(const Dictionary&, const Dictionary&) = default;
};

enum class DuplicatePolicy { kSumMeasures, kCountOccurrences, kError };

struct IngestConfig {
  char delimiter = ',';
  bool has_header = false;
  // Empty means every column that is not the measure column.
  std::vector<std::size_t> dimension_columns;
  std::optional<std::size_t> measure_column;
  DuplicatePolicy duplicate_policy = DuplicatePolicy::kSumMeasures;
  // Reassign ids in ascending string order instead of first appearance.
  bool sort_dictionary = false;
};

struct EncodedTable {
  EncodedCube cube;
  Dictionary dictionary;
};

// Parses a delimited fact table. Errors carry the 1-based line number.
EncodedTable encode_text(std::istream& in, const IngestConfig& config,
                         std::string source_id = "text");

// Writes a header line followed by one record per cell.
void decode(const EncodedCube& cube, const Dictionary& dict, std::ostream& out,
            char delimiter = ',');

// Splits one record; double quotes protect delimiters and are doubled to
// escape themselves.
std::vector<std::string> split_record(std::string_view line, char delimiter);

// --- Binary cube file -------------------------------------------------------
//
//   "DMND" | u8 version(=1) | u16 d | u32 n_i x d | u64 cell count
//   cells: d x u32 id, f64 measure              (all little-endian)
//   u64 checksum: FNV-1a 64 over the cell bytes followed by the header bytes
//
// The dictionary lives in a sidecar text file `<path>.dict` with lines
// "dim<TAB>id<TAB>string"; dimension names are stored as
// "#name<TAB>dim<TAB>name" and the measure name as "#measure<TAB>name".

inline constexpr std::uint8_t kBinaryVersion = 1;

struct BinaryHeader {
  std::vector<std::uint32_t> cardinalities;
  std::uint64_t cell_count = 0;

  std::size_t dim_count() const noexcept { return cardinalities.size(); }
  std::size_t header_bytes() const noexcept { return 4 + 1 + 2 + 4 * dim_count() + 8; }
  std::size_t cell_bytes() const noexcept { return 4 * dim_count() + 8; }
  std::uint64_t file_bytes() const noexcept {
    return header_bytes() + cell_count * cell_bytes() + 8;
  }
};

std::filesystem::path dictionary_path(const std::filesystem::path& cube_path);

void write_binary(const EncodedCube& cube, const Dictionary& dict,
                  const std::filesystem::path& path);

// Missing sidecar yields Dictionary::identity.
EncodedTable read_binary(const std::filesystem::path& path);

// Header only; the cells are not touched.
BinaryHeader read_binary_header(const std::filesystem::path& path);

void write_dictionary(const Dictionary& dict, const std::filesystem::path& path);
Dictionary read_dictionary(const std::filesystem::path& path);

// Checksum the binary file of `cube` would carry.
std::uint64_t cube_digest(const EncodedCube& cube);

// FNV-1a 64 over the raw bytes of any file.
std::uint64_t file_digest(const std::filesystem::path& path);

// Sequential reader over the cells of a binary cube file.
class CellFileReader {
 public:
  explicit CellFileReader(const std::filesystem::path& path,
                          bool verify_checksum = true);

  const BinaryHeader& header() const noexcept { return header_; }

  // Fills up to `max_cells` cells; returns the number read, 0 at the end.
  // The checksum (when enabled) is checked once the last cell is consumed.
  std::size_t read(std::vector<ValueId>& coords, std::vector<double>& measures,
                   std::size_t max_cells);

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  BinaryHeader header_;
  std::vector<unsigned char> header_raw_;
  std::vector<unsigned char> buffer_;
  std::uint64_t remaining_ = 0;
  std::uint64_t hash_;
  bool verify_;
  bool tail_checked_ = false;

  void check_tail();
};

// Streams cells to a binary cube file; the count and checksum are patched in
// by finish().
class CellFileWriter {
 public:
  CellFileWriter(const std::filesystem::path& path,
                 std::vector<std::uint32_t> cardinalities);
  CellFileWriter(const CellFileWriter&) = delete;
  CellFileWriter& operator=(const CellFileWriter&) = delete;
  ~CellFileWriter();

  void write(std::span<const ValueId> coords, double measure);
  void finish();

  std::uint64_t cell_count() const noexcept { return count_; }

 private:
  void flush();

  std::filesystem::path path_;
  std::ofstream out_;
  std::vector<std::uint32_t> cardinalities_;
  std::vector<unsigned char> buffer_;
  std::uint64_t count_ = 0;
  std::uint64_t hash_;
  bool finished_ = false;
};

}  // namespace diamond
