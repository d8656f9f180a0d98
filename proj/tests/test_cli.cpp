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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "process.hpp"
#include "report.hpp"
#include "sample_data.hpp"

namespace fs = std::filesystem;
using diamond::testing::ProcessResult;
using diamond::testing::run_process;
using diamond::testing::slurp;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("diamond-cli-" + std::to_string(::getpid()) + "-" +
                                       std::to_string(counter()++));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name, std::ios::binary) << text;
    return path(name);
  }
};

ProcessResult cli(const Scratch& s, std::vector<std::string> args) {
  args.insert(args.begin(), DIAMOND_CLI_PATH);
  return run_process(args, s.dir);
}

std::map<std::string, std::string> report_of(const ProcessResult& r) {
  std::istringstream in(r.out);
  return diamond::cli::parse_report(in);
}

std::string sales_cube(const Scratch& s) {
  const auto csv = s.write("sales.csv", diamond::testing::sales_csv());
  const auto out = s.path("sales.dmd");
  REQUIRE(cli(s, {"encode", csv, "--header", "--measure", "2", "-o", out}).exit_code == 0);
  return out;
}

std::string tiny9_cube(const Scratch& s) {
  const auto csv = s.write("tiny9.csv", diamond::testing::kTiny9Csv);
  const auto out = s.path("tiny9.dmd");
  REQUIRE(cli(s, {"encode", csv, "--header", "-o", out}).exit_code == 0);
  return out;
}

}  // namespace

TEST_CASE("encode reports the cube") {
  Scratch s;
  const auto csv = s.write("tiny9.csv", diamond::testing::kTiny9Csv);
  const auto r = cli(s, {"encode", csv, "--header", "-o", s.path("t.dmd")});
  REQUIRE(r.exit_code == 0);
  const auto rep = report_of(r);
  CHECK(rep.at("cells") == "9");
  CHECK(rep.at("cardinalities") == "4,5,4");
  CHECK(fs::exists(s.path("t.dmd")));
}

TEST_CASE("encode input errors") {
  Scratch s;
  const auto ragged = s.write("ragged.csv", "a,b\nc,d\ne\n");
  auto r = cli(s, {"encode", ragged, "-o", s.path("r.dmd")});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);

  const auto dup = s.write("dup.csv", "a,b\nc,d\na,b\n");
  r = cli(s, {"encode", dup, "--dup", "error", "-o", s.path("d.dmd")});
  CHECK(r.exit_code == 2);
  r = cli(s, {"encode", dup, "--dup", "count", "-o", s.path("d.dmd")});
  CHECK(r.exit_code == 0);
  CHECK(report_of(r).at("cells") == "2");

  r = cli(s, {"encode", s.path("missing.csv"), "-o", s.path("m.dmd")});
  CHECK(r.exit_code == 4);
}

TEST_CASE("dice the sales cube under sum") {
  Scratch s;
  const auto cube = sales_cube(s);
  const auto r = cli(s, {"dice", cube, "--agg", "sum", "--carats", "5,10", "--emit", "cells"});
  REQUIRE(r.exit_code == 0);
  const auto rep = report_of(r);
  CHECK(rep.at("cells_out") == "9");
  CHECK(rep.at("shape") == "3,3");
  CHECK(r.out.find("Camera,Miami,5.3\n") != std::string::npos);
  CHECK(r.out.find("TV,") == std::string::npos);
}

TEST_CASE("dice tiny9 with trace") {
  Scratch s;
  const auto cube = tiny9_cube(s);
  for (const char* algo : {"basic", "compact"}) {
    const auto trace = s.path(std::string("trace-") + algo + ".tsv");
    const auto r = cli(s, {"dice", cube, "--k", "2", "--algo", algo, "--trace-iterations", trace});
    REQUIRE(r.exit_code == 0);
    const auto rep = report_of(r);
    CHECK(rep.at("cells_out") == "4");
    CHECK(rep.at("major_iterations") == "3");
    std::istringstream lines(slurp(trace));
    std::vector<long> cells;
    long i = 0, c = 0;
    while (lines >> i >> c) {
      CHECK(i == static_cast<long>(cells.size()) + 1);
      if (!cells.empty()) CHECK(c <= cells.back());
      cells.push_back(c);
    }
    REQUIRE(cells.size() == 3);
    CHECK(cells.back() == 4);
  }
  const auto streamed = cli(s, {"dice", cube, "--k", "2", "--stream"});
  REQUIRE(streamed.exit_code == 0);
  CHECK(report_of(streamed).at("cells_out") == "4");
  CHECK(report_of(streamed).at("major_iterations") == "3");
}

TEST_CASE("zero carats reproduce the input") {
  Scratch s;
  const auto cube = tiny9_cube(s);
  const auto out = s.path("same.dmd");
  const auto r = cli(s, {"dice", cube, "--k", "0", "-o", out});
  REQUIRE(r.exit_code == 0);
  CHECK(report_of(r).at("cells_out") == "9");
  CHECK(slurp(out) == slurp(cube));
}

TEST_CASE("dice argument and domain errors") {
  Scratch s;
  const auto cube = tiny9_cube(s);
  CHECK(cli(s, {"dice", cube, "--carats", "1,2"}).exit_code == 2);
  CHECK(cli(s, {"dice", cube}).exit_code == 2);
  CHECK(cli(s, {"dice", s.path("nope.dmd"), "--k", "1"}).exit_code == 4);

  const auto neg = s.write("neg.csv", "x,p,-3\nx,q,2\ny,p,4\ny,q,1\n");
  const auto negcube = s.path("neg.dmd");
  REQUIRE(cli(s, {"encode", neg, "--measure", "2", "-o", negcube}).exit_code == 0);
  const auto r = cli(s, {"dice", negcube, "--agg", "sum", "--k", "1"});
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("non_monotone") != std::string::npos);
  CHECK(cli(s, {"dice", negcube, "--agg", "count", "--k", "1"}).exit_code == 0);

  const auto garbage = s.write("garbage.dmd", "this is not a cube");
  CHECK(cli(s, {"dice", garbage, "--k", "1"}).exit_code == 2);
}

TEST_CASE("kappa") {
  Scratch s;
  auto r = cli(s, {"kappa", tiny9_cube(s)});
  REQUIRE(r.exit_code == 0);
  CHECK(report_of(r).at("kappa") == "2");

  r = cli(s, {"kappa", sales_cube(s), "--agg", "sum"});
  REQUIRE(r.exit_code == 0);
  const auto rep = report_of(r);
  CHECK(std::fabs(std::stod(rep.at("kappa")) - 7.4) < 1e-9);
  CHECK(rep.at("exact") == "yes");
  CHECK(rep.at("cells_out") == "6");

  const auto one = s.write("one.csv", "x,y,7\n");
  const auto onecube = s.path("one.dmd");
  REQUIRE(cli(s, {"encode", one, "--measure", "2", "-o", onecube}).exit_code == 0);
  r = cli(s, {"kappa", onecube, "--agg", "sum"});
  REQUIRE(r.exit_code == 0);
  CHECK(report_of(r).at("kappa") == "7");
}

TEST_CASE("gen is reproducible") {
  Scratch s;
  const std::vector<std::string> base = {"gen", "--card", "3591", "--draws", "1000000",
                                         "--seed", "1"};
  auto a = base;
  a.insert(a.end(), {"-o", s.path("a.dmd")});
  auto b = base;
  b.insert(b.end(), {"-o", s.path("b.dmd")});
  const auto ra = cli(s, a);
  const auto rb = cli(s, b);
  REQUIRE(ra.exit_code == 0);
  REQUIRE(rb.exit_code == 0);
  const auto rep = report_of(ra);
  CHECK(rep.at("output_digest") == report_of(rb).at("output_digest"));
  CHECK(slurp(s.path("a.dmd")) == slurp(s.path("b.dmd")));
  const double cells = std::stod(rep.at("cells"));
  CHECK(std::fabs(cells - 999987.0) <= 50.0);
  CHECK(rep.at("source").find("seed=1") != std::string::npos);

  const auto single = cli(s, {"gen", "--card", "1", "--draws", "40", "-o", s.path("c.dmd")});
  REQUIRE(single.exit_code == 0);
  CHECK(report_of(single).at("cells") == "1");

  const auto pw = cli(s, {"gen", "--dist", "pow:2.0", "--card", "50", "--draws", "2000", "-o",
                          s.path("p.dmd")});
  REQUIRE(pw.exit_code == 0);
  CHECK(cli(s, {"gen", "--dist", "pow:0.8", "--card", "50", "--draws", "20", "-o",
                s.path("q.dmd")})
            .exit_code == 2);
}

TEST_CASE("stats bounds") {
  Scratch s;
  auto r = cli(s, {"stats", sales_cube(s)});
  REQUIRE(r.exit_code == 0);
  auto rep = report_of(r);
  CHECK(std::stod(rep.at("bound.sum_kappa_lower")) == 6.4);
  CHECK(std::fabs(std::stod(rep.at("bound.sum_kappa_upper")) - 15.6) < 1e-9);

  const auto gen = cli(s, {"gen", "--card", "3591", "--draws", "1000000", "--seed", "1", "-o",
                           s.path("u.dmd")});
  REQUIRE(gen.exit_code == 0);
  r = cli(s, {"stats", s.path("u.dmd")});
  REQUIRE(r.exit_code == 0);
  CHECK(report_of(r).at("bound.count_kappa_lower") == "89");

  const auto empty = s.write("empty.csv", "");
  const auto emptycube = s.path("empty.dmd");
  REQUIRE(cli(s, {"encode", empty, "-o", emptycube}).exit_code == 0);
  CHECK(cli(s, {"stats", emptycube}).exit_code == 2);
}

TEST_CASE("encode, dice and decode round trip") {
  Scratch s;
  const auto cube = sales_cube(s);
  const auto dia = s.path("dia.dmd");
  REQUIRE(cli(s, {"dice", cube, "--agg", "sum", "--carats", "5,10", "-o", dia}).exit_code == 0);
  const auto text = s.path("dia.csv");
  REQUIRE(cli(s, {"decode", dia, "-o", text}).exit_code == 0);
  const auto again = s.path("again.dmd");
  REQUIRE(cli(s, {"encode", text, "--header", "--measure", "2", "-o", again}).exit_code == 0);
  const auto r1 = cli(s, {"stats", dia});
  const auto r2 = cli(s, {"stats", again});
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  CHECK(report_of(r1).at("cells") == report_of(r2).at("cells"));
  CHECK(report_of(r1).at("measure_sum") == report_of(r2).at("measure_sum"));
  const auto text2 = s.path("again.csv");
  REQUIRE(cli(s, {"decode", again, "-o", text2}).exit_code == 0);
  CHECK(slurp(text) == slurp(text2));
}

TEST_CASE("human lines and the report block agree") {
  Scratch s;
  const auto r = cli(s, {"dice", tiny9_cube(s), "--k", "2"});
  REQUIRE(r.exit_code == 0);
  const auto rep = report_of(r);
  std::vector<std::string> shown;
  std::istringstream head(r.out.substr(0, r.out.find(diamond::cli::kBlockBegin)));
  for (std::string line; std::getline(head, line);) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const auto start = line.find_first_not_of(' ', colon + 1);
    if (start != std::string::npos) shown.push_back(line.substr(start));
  }
  for (const char* key : {"cells_in", "cells_out", "shape", "major_iterations", "compactions",
                          "min_slice_aggregate", "capture"}) {
    INFO(key);
    REQUIRE(rep.count(key) == 1);
    CHECK(std::find(shown.begin(), shown.end(), rep.at(key)) != shown.end());
  }
}
