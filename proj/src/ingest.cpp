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

#include "ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "error.hpp"

namespace diamond {

namespace {

constexpr char kMagic[4] = {'D', 'M', 'N', 'D'};
constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

std::uint64_t fnv1a(std::uint64_t h, const unsigned char* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

void put_u16(std::vector<unsigned char>& b, std::uint16_t v) {
  b.push_back(static_cast<unsigned char>(v));
  b.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& b, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) b.push_back(static_cast<unsigned char>(v >> s));
}

void put_u64(std::vector<unsigned char>& b, std::uint64_t v) {
  for (int s = 0; s < 64; s += 8) b.push_back(static_cast<unsigned char>(v >> s));
}

void put_f64(std::vector<unsigned char>& b, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  put_u64(b, bits);
}

std::uint32_t get_u32(const unsigned char* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
         std::uint32_t{p[3]} << 24;
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = v << 8 | p[i];
  return v;
}

double get_f64(const unsigned char* p) {
  const std::uint64_t bits = get_u64(p);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

std::vector<unsigned char> encode_header(std::span<const std::uint32_t> cards,
                                         std::uint64_t count) {
  if (cards.size() > 0xffff) {
    throw Error(ErrorCode::kTooLarge, "binary format supports at most 65535 dimensions");
  }
  std::vector<unsigned char> h(kMagic, kMagic + 4);
  h.push_back(kBinaryVersion);
  put_u16(h, static_cast<std::uint16_t>(cards.size()));
  for (auto n : cards) put_u32(h, n);
  put_u64(h, count);
  return h;
}

std::string format_measure(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string quote_field(const std::string& s, char delimiter) {
  if (s.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string::npos &&
      !s.empty()) {
    return s;
  }
  if (s.empty()) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string escape_tsv(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_tsv(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    switch (s[++i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: out += s[i];
    }
  }
  return out;
}

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

Dictionary Dictionary::identity(std::span<const std::uint32_t> cardinalities) {
  Dictionary dict;
  for (std::size_t i = 0; i < cardinalities.size(); ++i) {
    dict.dimension_names.push_back("d" + std::to_string(i));
    auto& vals = dict.values.emplace_back();
    vals.reserve(cardinalities[i]);
    for (std::uint32_t id = 0; id < cardinalities[i]; ++id) vals.push_back(std::to_string(id));
  }
  return dict;
}

std::vector<std::string> split_record(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && trim(field).empty()) {
      field.clear();
      quoted = was_quoted = true;
    } else if (c == delimiter) {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw Error(ErrorCode::kParse, "unterminated quoted field");
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

EncodedTable encode_text(std::istream& in, const IngestConfig& config,
                         std::string source_id) {
  std::vector<std::size_t> dim_cols = config.dimension_columns;
  std::size_t expected_fields = 0;
  bool have_layout = false;
  std::vector<std::string> header_fields;

  std::vector<std::unordered_map<std::string, ValueId>> lookup;
  Dictionary dict;
  std::vector<ValueId> coords;
  std::vector<double> measures;
  std::unordered_map<std::string, std::size_t> cell_index;  // packed ids -> cell
  std::vector<std::size_t> first_line;

  auto settle_layout = [&](std::size_t field_count, std::size_t line_no) {
    expected_fields = field_count;
    if (dim_cols.empty()) {
      for (std::size_t c = 0; c < field_count; ++c) {
        if (!config.measure_column || *config.measure_column != c) dim_cols.push_back(c);
      }
    }
    std::vector<std::size_t> sorted = dim_cols;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::kInvalidArgument, "dimension columns must be distinct");
    }
    if (config.measure_column &&
        std::find(dim_cols.begin(), dim_cols.end(), *config.measure_column) != dim_cols.end()) {
      throw Error(ErrorCode::kInvalidArgument, "measure column is also a dimension column");
    }
    if (dim_cols.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "no dimension columns");
    }
    const std::size_t needed =
        std::max(sorted.back(), config.measure_column.value_or(0)) + 1;
    if (field_count < needed) {
      throw Error(ErrorCode::kParse,
                  line_error(line_no, "record has " + std::to_string(field_count) +
                                          " fields, configuration needs " +
                                          std::to_string(needed)));
    }
    lookup.resize(dim_cols.size());
    dict.values.resize(dim_cols.size());
    for (std::size_t i = 0; i < dim_cols.size(); ++i) {
      dict.dimension_names.push_back(header_fields.empty() ? "d" + std::to_string(i)
                                                           : header_fields[dim_cols[i]]);
    }
    if (!header_fields.empty() && config.measure_column) {
      dict.measure_name = header_fields[*config.measure_column];
    }
    have_layout = true;
  };

  std::string line;
  std::size_t line_no = 0;
  std::string key;
  std::vector<ValueId> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = split_record(line, config.delimiter);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, line_error(line_no, e.what()));
    }
    if (config.has_header && header_fields.empty() && !have_layout) {
      header_fields = fields;
      settle_layout(fields.size(), line_no);
      continue;
    }
    if (!have_layout) settle_layout(fields.size(), line_no);
    if (fields.size() != expected_fields) {
      throw Error(ErrorCode::kParse,
                  line_error(line_no, "ragged record: " + std::to_string(fields.size()) +
                                          " fields, expected " +
                                          std::to_string(expected_fields)));
    }

    double measure = 1.0;
    if (config.measure_column && config.duplicate_policy != DuplicatePolicy::kCountOccurrences) {
      const std::string& text = fields[*config.measure_column];
      const char* first = text.data();
      const char* last = text.data() + text.size();
      if (first != last && *first == '+') ++first;
      auto res = std::from_chars(first, last, measure);
      if (res.ec != std::errc{} || res.ptr != last || text.empty() || !std::isfinite(measure)) {
        throw Error(ErrorCode::kParse,
                    line_error(line_no, "measure '" + text + "' is not a finite number"));
      }
    }

    ids.clear();
    for (std::size_t i = 0; i < dim_cols.size(); ++i) {
      const std::string& s = fields[dim_cols[i]];
      auto [it, inserted] = lookup[i].try_emplace(s, static_cast<ValueId>(dict.values[i].size()));
      if (inserted) {
        if (dict.values[i].size() == 0xffffffffu) {
          throw Error(ErrorCode::kTooLarge, line_error(line_no, "dimension exceeds 2^32-1 values"));
        }
        dict.values[i].push_back(s);
      }
      ids.push_back(it->second);
    }
    key.assign(reinterpret_cast<const char*>(ids.data()), ids.size() * sizeof(ValueId));
    auto [cit, fresh] = cell_index.try_emplace(key, measures.size());
    if (fresh) {
      coords.insert(coords.end(), ids.begin(), ids.end());
      measures.push_back(measure);
      first_line.push_back(line_no);
      continue;
    }
    switch (config.duplicate_policy) {
      case DuplicatePolicy::kSumMeasures: measures[cit->second] += measure; break;
      case DuplicatePolicy::kCountOccurrences: measures[cit->second] += 1.0; break;
      case DuplicatePolicy::kError:
        throw Error(ErrorCode::kDuplicate,
                    line_error(line_no, "duplicate of the fact on line " +
                                            std::to_string(first_line[cit->second])));
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read error after line " + std::to_string(line_no));

  if (config.sort_dictionary) {
    for (std::size_t i = 0; i < dict.values.size(); ++i) {
      auto& vals = dict.values[i];
      std::vector<ValueId> order(vals.size());
      std::iota(order.begin(), order.end(), ValueId{0});
      std::sort(order.begin(), order.end(), [&](ValueId a, ValueId b) { return vals[a] < vals[b]; });
      std::vector<ValueId> remap(vals.size());
      std::vector<std::string> sorted(vals.size());
      for (std::size_t r = 0; r < order.size(); ++r) {
        remap[order[r]] = static_cast<ValueId>(r);
        sorted[r] = std::move(vals[order[r]]);
      }
      vals = std::move(sorted);
      for (std::size_t c = 0; c < measures.size(); ++c) {
        auto& id = coords[c * dict.values.size() + i];
        id = remap[id];
      }
    }
  }

  std::vector<std::uint32_t> cards;
  for (const auto& vals : dict.values) cards.push_back(static_cast<std::uint32_t>(vals.size()));
  EncodedCube cube(std::move(cards), std::move(coords), std::move(measures), std::move(source_id));
  validate(cube);
  return {std::move(cube), std::move(dict)};
}

void decode(const EncodedCube& cube, const Dictionary& dict, std::ostream& out,
            char delimiter) {
  const std::size_t d = cube.dim_count();
  if (dict.values.size() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "dictionary has " +
                                                   std::to_string(dict.values.size()) +
                                                   " dimensions, cube has " + std::to_string(d));
  }
  for (std::size_t i = 0; i < d; ++i) {
    const std::string name =
        i < dict.dimension_names.size() ? dict.dimension_names[i] : "d" + std::to_string(i);
    out << quote_field(name, delimiter) << delimiter;
  }
  out << quote_field(dict.measure_name, delimiter) << '\n';
  std::string record;
  for (std::size_t c = 0; c < cube.cell_count(); ++c) {
    record.clear();
    for (std::size_t i = 0; i < d; ++i) {
      const ValueId id = cube.coord(c, i);
      if (id >= dict.values[i].size()) {
        throw Error(ErrorCode::kOutOfRange, "id " + std::to_string(id) +
                                                " missing from dictionary of dimension " +
                                                std::to_string(i));
      }
      record += quote_field(dict.values[i][id], delimiter);
      record += delimiter;
    }
    record += format_measure(cube.measure(c));
    record += '\n';
    out << record;
  }
  if (!out) throw Error(ErrorCode::kIo, "write error while decoding");
}

std::filesystem::path dictionary_path(const std::filesystem::path& cube_path) {
  auto p = cube_path;
  p += ".dict";
  return p;
}

void write_dictionary(const Dictionary& dict, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < dict.dimension_names.size(); ++i) {
    out << "#name\t" << i << '\t' << escape_tsv(dict.dimension_names[i]) << '\n';
  }
  out << "#measure\t" << escape_tsv(dict.measure_name) << '\n';
  for (std::size_t i = 0; i < dict.values.size(); ++i) {
    for (std::size_t id = 0; id < dict.values[i].size(); ++id) {
      out << i << '\t' << id << '\t' << escape_tsv(dict.values[i][id]) << '\n';
    }
  }
  if (!out.flush()) throw Error(ErrorCode::kIo, "write error on " + path.string());
}

Dictionary read_dictionary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  Dictionary dict;
  std::string line;
  std::size_t line_no = 0;
  auto parse_index = [&](std::string_view s) {
    std::size_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw Error(ErrorCode::kParse,
                  path.string() + ": " + line_error(line_no, "bad index '" + std::string(s) + "'"));
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string_view view(line);
    const auto t1 = view.find('\t');
    if (t1 == std::string_view::npos) {
      throw Error(ErrorCode::kParse, path.string() + ": " + line_error(line_no, "missing tab"));
    }
    const auto head = view.substr(0, t1);
    const auto rest = view.substr(t1 + 1);
    if (head == "#measure") {
      dict.measure_name = unescape_tsv(rest);
      continue;
    }
    const auto t2 = rest.find('\t');
    if (t2 == std::string_view::npos) {
      throw Error(ErrorCode::kParse, path.string() + ": " + line_error(line_no, "missing tab"));
    }
    if (head == "#name") {
      const std::size_t dim = parse_index(rest.substr(0, t2));
      if (dict.dimension_names.size() <= dim) dict.dimension_names.resize(dim + 1);
      dict.dimension_names[dim] = unescape_tsv(rest.substr(t2 + 1));
      continue;
    }
    const std::size_t dim = parse_index(head);
    const std::size_t id = parse_index(rest.substr(0, t2));
    if (dict.values.size() <= dim) dict.values.resize(dim + 1);
    if (id != dict.values[dim].size()) {
      throw Error(ErrorCode::kParse,
                  path.string() + ": " + line_error(line_no, "ids must be listed densely in order"));
    }
    dict.values[dim].push_back(unescape_tsv(rest.substr(t2 + 1)));
  }
  if (dict.dimension_names.size() < dict.values.size()) {
    for (std::size_t i = dict.dimension_names.size(); i < dict.values.size(); ++i) {
      dict.dimension_names.push_back("d" + std::to_string(i));
    }
  }
  return dict;
}

std::uint64_t cube_digest(const EncodedCube& cube) {
  std::uint64_t h = kFnvOffset;
  std::vector<unsigned char> buf;
  buf.reserve(cube.dim_count() * 4 + 8);
  for (std::size_t c = 0; c < cube.cell_count(); ++c) {
    buf.clear();
    for (auto id : cube.coords(c)) put_u32(buf, id);
    put_f64(buf, cube.measure(c));
    h = fnv1a(h, buf.data(), buf.size());
  }
  const auto header = encode_header(cube.cardinalities(), cube.cell_count());
  return fnv1a(h, header.data(), header.size());
}

std::uint64_t file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<char> buf(1 << 20);
  std::uint64_t h = kFnvOffset;
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h = fnv1a(h, reinterpret_cast<const unsigned char*>(buf.data()),
              static_cast<std::size_t>(in.gcount()));
  }
  return h;
}

// --- CellFileWriter ---------------------------------------------------------

CellFileWriter::CellFileWriter(const std::filesystem::path& path,
                               std::vector<std::uint32_t> cardinalities)
    : path_(path), cardinalities_(std::move(cardinalities)), hash_(kFnvOffset) {
  out_.open(path_, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error(ErrorCode::kIo, "cannot open " + path_.string() + " for writing");
  const auto header = encode_header(cardinalities_, 0);
  out_.write(reinterpret_cast<const char*>(header.data()),
             static_cast<std::streamsize>(header.size()));
  buffer_.reserve(1 << 20);
}

CellFileWriter::~CellFileWriter() {
  if (!finished_) {
    try {
      finish();
    } catch (...) {
    }
  }
}

void CellFileWriter::write(std::span<const ValueId> coords, double measure) {
  const std::size_t start = buffer_.size();
  for (auto id : coords) put_u32(buffer_, id);
  put_f64(buffer_, measure);
  hash_ = fnv1a(hash_, buffer_.data() + start, buffer_.size() - start);
  ++count_;
  if (buffer_.size() >= (1u << 20)) flush();
}

void CellFileWriter::flush() {
  out_.write(reinterpret_cast<const char*>(buffer_.data()),
             static_cast<std::streamsize>(buffer_.size()));
  buffer_.clear();
  if (!out_) throw Error(ErrorCode::kIo, "write error on " + path_.string());
}

void CellFileWriter::finish() {
  if (finished_) return;
  finished_ = true;
  flush();
  const auto header = encode_header(cardinalities_, count_);
  const std::uint64_t checksum = fnv1a(hash_, header.data(), header.size());
  std::vector<unsigned char> tail;
  put_u64(tail, checksum);
  out_.write(reinterpret_cast<const char*>(tail.data()), 8);
  out_.seekp(0);
  out_.write(reinterpret_cast<const char*>(header.data()),
             static_cast<std::streamsize>(header.size()));
  out_.close();
  if (!out_) throw Error(ErrorCode::kIo, "write error on " + path_.string());
}

// --- CellFileReader ---------------------------------------------------------

namespace {

BinaryHeader parse_header(std::ifstream& in, const std::filesystem::path& path,
                          std::vector<unsigned char>& raw) {
  unsigned char fixed[7];
  in.read(reinterpret_cast<char*>(fixed), 7);
  if (in.gcount() != 7) throw Error(ErrorCode::kTruncated, path.string() + ": truncated header");
  if (std::memcmp(fixed, kMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, path.string() + ": not a diamond cube file (bad magic)");
  }
  if (fixed[4] != kBinaryVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                path.string() + ": unsupported format version " + std::to_string(fixed[4]));
  }
  const std::size_t d = std::size_t{fixed[5]} | std::size_t{fixed[6]} << 8;
  raw.assign(fixed, fixed + 7);
  std::vector<unsigned char> rest(4 * d + 8);
  in.read(reinterpret_cast<char*>(rest.data()), static_cast<std::streamsize>(rest.size()));
  if (static_cast<std::size_t>(in.gcount()) != rest.size()) {
    throw Error(ErrorCode::kTruncated, path.string() + ": truncated header");
  }
  raw.insert(raw.end(), rest.begin(), rest.end());
  BinaryHeader h;
  for (std::size_t i = 0; i < d; ++i) h.cardinalities.push_back(get_u32(rest.data() + 4 * i));
  h.cell_count = get_u64(rest.data() + 4 * d);
  return h;
}

}  // namespace

CellFileReader::CellFileReader(const std::filesystem::path& path, bool verify_checksum)
    : path_(path), hash_(kFnvOffset), verify_(verify_checksum) {
  in_.open(path_, std::ios::binary);
  if (!in_) throw Error(ErrorCode::kIo, "cannot open " + path_.string());
  header_ = parse_header(in_, path_, header_raw_);
  std::error_code ec;
  const auto size = std::filesystem::file_size(path_, ec);
  if (!ec && size < header_.file_bytes()) {
    throw Error(ErrorCode::kTruncated, path_.string() + ": file holds " + std::to_string(size) +
                                           " bytes, header promises " +
                                           std::to_string(header_.file_bytes()));
  }
  remaining_ = header_.cell_count;
}

std::size_t CellFileReader::read(std::vector<ValueId>& coords, std::vector<double>& measures,
                                 std::size_t max_cells) {
  coords.clear();
  measures.clear();
  const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(remaining_, max_cells));
  if (n == 0) {
    if (remaining_ == 0) check_tail();
    return 0;
  }
  const std::size_t d = header_.dim_count();
  const std::size_t stride = header_.cell_bytes();
  buffer_.resize(n * stride);
  in_.read(reinterpret_cast<char*>(buffer_.data()), static_cast<std::streamsize>(buffer_.size()));
  if (static_cast<std::size_t>(in_.gcount()) != buffer_.size()) {
    throw Error(ErrorCode::kTruncated, path_.string() + ": truncated cell data");
  }
  if (verify_) hash_ = fnv1a(hash_, buffer_.data(), buffer_.size());
  coords.resize(n * d);
  measures.resize(n);
  const unsigned char* p = buffer_.data();
  for (std::size_t c = 0; c < n; ++c, p += stride) {
    for (std::size_t i = 0; i < d; ++i) coords[c * d + i] = get_u32(p + 4 * i);
    measures[c] = get_f64(p + 4 * d);
  }
  remaining_ -= n;
  if (remaining_ == 0) check_tail();
  return n;
}

void CellFileReader::check_tail() {
  if (!verify_ || tail_checked_) return;
  tail_checked_ = true;
  unsigned char tail[8];
  in_.read(reinterpret_cast<char*>(tail), 8);
  if (in_.gcount() != 8) throw Error(ErrorCode::kTruncated, path_.string() + ": missing checksum");
  const std::uint64_t expected = fnv1a(hash_, header_raw_.data(), header_raw_.size());
  if (get_u64(tail) != expected) {
    throw Error(ErrorCode::kChecksumMismatch, path_.string() + ": checksum mismatch");
  }
}

// --- whole-file helpers -----------------------------------------------------

void write_binary(const EncodedCube& cube, const Dictionary& dict,
                  const std::filesystem::path& path) {
  if (dict.values.size() != cube.dim_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "dictionary and cube disagree on dimension count");
  }
  {
    CellFileWriter writer(path, {cube.cardinalities().begin(), cube.cardinalities().end()});
    for (std::size_t c = 0; c < cube.cell_count(); ++c) writer.write(cube.coords(c), cube.measure(c));
    writer.finish();
  }
  write_dictionary(dict, dictionary_path(path));
}

BinaryHeader read_binary_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<unsigned char> raw;
  return parse_header(in, path, raw);
}

EncodedTable read_binary(const std::filesystem::path& path) {
  CellFileReader reader(path);
  const auto& h = reader.header();
  std::vector<ValueId> coords;
  std::vector<double> measures;
  coords.reserve(static_cast<std::size_t>(h.cell_count * h.dim_count()));
  measures.reserve(static_cast<std::size_t>(h.cell_count));
  std::vector<ValueId> chunk_coords;
  std::vector<double> chunk_measures;
  while (reader.read(chunk_coords, chunk_measures, 1 << 16) > 0) {
    coords.insert(coords.end(), chunk_coords.begin(), chunk_coords.end());
    measures.insert(measures.end(), chunk_measures.begin(), chunk_measures.end());
  }
  EncodedCube cube(h.cardinalities, std::move(coords), std::move(measures),
                   path.filename().string());
  const auto dict_file = dictionary_path(path);
  Dictionary dict = std::filesystem::exists(dict_file) ? read_dictionary(dict_file)
                                                       : Dictionary::identity(h.cardinalities);
  return {std::move(cube), std::move(dict)};
}

}  // namespace diamond
