// Copyright 2026 The gaussdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gaussdisc/bounds.hpp"
#include "gaussdisc/montecarlo.hpp"
#include "gaussdisc_cli/cli.hpp"

namespace fs = std::filesystem;
using namespace gaussdisc;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gaussdisc");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path tmp(const std::string& name) {
  const fs::path dir{GAUSSDISC_TEST_TMPDIR};
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

using Table = std::vector<std::vector<std::string>>;

Table parse_csv(const std::string& text) {
  Table rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string f;
    std::istringstream ls(line);
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.front().size(); ++i) {
    if (t.front()[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("parse_grid") {
  CHECK(cli::parse_grid("1") == std::vector<double>{1.0});
  CHECK(cli::parse_grid("0.5, 1,2") == std::vector<double>{0.5, 1.0, 2.0});
  const auto g = cli::parse_grid("0:1:5");
  REQUIRE(g.size() == 5);
  CHECK(g[1] == doctest::Approx(0.25));
  CHECK(g.back() == 1.0);
  CHECK(cli::parse_grid("2:2:1") == std::vector<double>{2.0});
  CHECK_THROWS_AS(cli::parse_grid(""), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_grid("1,,2"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_grid("abc"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_grid("0:1:0"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_grid("0:1:2.5"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_grid("nan"), cli::UsageError);
}

TEST_CASE("parse_gamma") {
  CHECK(cli::parse_gamma("optimal").optimal);
  const auto g = cli::parse_gamma("0,0.25");
  CHECK_FALSE(g.optimal);
  CHECK(g.values == std::vector<double>{0.0, 0.25});
}

TEST_CASE("format_number") {
  CHECK(cli::format_number(0.5) == "0.5");
  CHECK(cli::format_number(0.022750131948179207) == "0.02275013195");
  CHECK(cli::format_number(8.3872691604024863568e-5) == "8.38726916e-05");
}

TEST_CASE("config parsing") {
  const auto s = cli::parse_config(
      R"({"schema_version": 1, "nbar": "0:1:3", "loss": [0, 0.5], "gamma": "optimal",
          "squeezing_db": 3.8, "seed": 42, "samples": 1000, "methods": ["phase"]})");
  REQUIRE(s.nbar);
  CHECK(s.nbar->size() == 3);
  CHECK(*s.loss == std::vector<double>{0.0, 0.5});
  CHECK(s.gamma->optimal);
  CHECK(*s.squeezing_db == 3.8);
  CHECK(*s.seed == 42);
  CHECK(*s.samples == 1000);
  CHECK(*s.methods == std::vector<std::string>{"phase"});
  CHECK_FALSE(s.vth);

  CHECK_THROWS_AS(cli::parse_config(R"({"nbar": [1]})"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_config(R"({"schema_version": 2})"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_config(R"({"schema_version": 1, "nbr": [1]})"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_config(R"({"schema_version": 1, "seed": "x"})"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_config("[1, 2]"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_config("{"), cli::UsageError);
  CHECK_THROWS_AS(cli::load_config(tmp("missing.json").string()), cli::UsageError);
}

TEST_CASE("merge prefers flags") {
  cli::Settings base;
  base.seed = 1;
  base.vth = 1.2;
  cli::Settings flags;
  flags.seed = 7;
  const auto m = cli::merge(base, flags);
  CHECK(*m.seed == 7);
  CHECK(*m.vth == 1.2);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == cli::kUsageError);
  CHECK(run_cli({"nonsense"}).code == cli::kUsageError);
  CHECK(run_cli({"bounds", "--nbar", "-1"}).code == cli::kUsageError);
  CHECK(run_cli({"bounds", "--nbar", "2,1"}).code == cli::kUsageError);
  CHECK(run_cli({"sweep", "--loss", "1.5"}).code != cli::kSuccess);
  CHECK(run_cli({"sweep", "--nbar", "1"}).code == cli::kUsageError);
  CHECK(run_cli({"sweep", "--loss", "0", "--squeezing-db", "3", "--squeezing-r", "0.3"}).code ==
        cli::kUsageError);
  CHECK(run_cli({"bounds", "--config", tmp("missing.json").string()}).code == cli::kUsageError);
  CHECK(run_cli({"analyze", tmp("missing_0.txt").string(), tmp("missing_1.txt").string()}).code ==
        cli::kUsageError);
  CHECK(run_cli({"bounds", "--out", (tmp("no_such_dir") / "x.csv").string()}).code ==
        cli::kUsageError);
  CHECK(run_cli({"bounds", "--nbar", "1"}).code == cli::kSuccess);
  CHECK(run_cli({"--help"}).code == cli::kSuccess);
}

TEST_CASE("bounds subcommand") {
  const auto r = run_cli({"bounds", "--nbar", "0,0.67,1"});
  REQUIRE(r.code == 0);
  const auto t = parse_csv(r.out);
  REQUIRE(t.size() == 4);
  for (std::size_t c = 1; c <= 4; ++c) CHECK(t[1][c] == "0.5");
  const auto b = bound_set(1);
  CHECK(std::stod(t[3][column(t, "p_sql")]) == doctest::Approx(b.p_sql).epsilon(1e-9));
  CHECK(std::stod(t[3][column(t, "p_hel_coherent")]) ==
        doctest::Approx(b.p_helstrom_coherent).epsilon(1e-9));
  CHECK(std::stod(t[3][column(t, "p_gauss")]) == doctest::Approx(b.p_gaussian_limit).epsilon(1e-9));
  CHECK(std::stod(t[3][column(t, "p_hel_squeezed")]) ==
        doctest::Approx(b.p_helstrom_squeezed).epsilon(1e-9));
  CHECK(std::abs(std::stod(t[2][column(t, "p_gauss")]) -
                 std::stod(t[2][column(t, "p_hel_coherent")])) < 2e-3);

  const auto dflt = parse_csv(run_cli({"bounds"}).out);
  CHECK(dflt.size() == 52);
}

TEST_CASE("emitted CSV round-trips the mutual information columns") {
  const auto t = parse_csv(run_cli({"bounds", "--nbar", "0:5:26"}).out);
  const char* pairs[][2] = {{"p_sql", "mi_sql"},
                            {"p_hel_coherent", "mi_hel_coherent"},
                            {"p_gauss", "mi_gauss"},
                            {"p_hel_squeezed", "mi_hel_squeezed"}};
  for (std::size_t i = 1; i < t.size(); ++i) {
    for (const auto& pr : pairs) {
      const double p = std::stod(t[i][column(t, pr[0])]);
      CHECK(cli::format_number(mutual_information(p)) == t[i][column(t, pr[1])]);
    }
  }
  const auto s = parse_csv(run_cli({"sweep", "--loss", "0,0.3", "--nbar", "0.1:3:12",
                                    "--squeezing-db", "3.8", "--vth", "1.1"})
                               .out);
  for (std::size_t i = 1; i < s.size(); ++i) {
    const auto& pm = s[i][column(s, "p_model")];
    if (pm == "infeasible") continue;
    CHECK(cli::format_number(mutual_information(std::stod(pm))) == s[i][column(s, "mutual_info")]);
  }
}

TEST_CASE("sweep subcommand") {
  const auto t = parse_csv(run_cli({"sweep", "--loss", "0", "--gamma", "0", "--nbar", "0.2:3:8"}).out);
  REQUIRE(t.size() == 9);
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(t[i][column(t, "p_model")] == t[i][column(t, "p_sql")]);
    CHECK(t[i][column(t, "p_mc_mean")].empty());
  }

  const auto opt = parse_csv(run_cli({"sweep", "--loss", "0", "--gamma", "optimal", "--nbar", "1"}).out);
  CHECK(std::stod(opt[1][column(opt, "gamma")]) == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
  CHECK(std::stod(opt[1][column(opt, "p_model")]) ==
        doctest::Approx(bound_set(1).p_gaussian_limit).epsilon(1e-8));

  // Rows run loss-major, then gamma, then n̄.
  const auto order = parse_csv(
      run_cli({"sweep", "--loss", "0,0.5", "--gamma", "0,0.2", "--nbar", "1,2"}).out);
  REQUIRE(order.size() == 9);
  CHECK(order[1][column(order, "loss")] == "0");
  CHECK(order[2][column(order, "n_mean")] == "2");
  CHECK(order[3][column(order, "gamma")] == "0.2");
  CHECK(order[5][column(order, "loss")] == "0.5");

  const auto inf = run_cli({"sweep", "--loss", "0", "--nbar", "0.05,1", "--squeezing-db", "3.8"});
  CHECK(inf.code == 0);
  const auto it = parse_csv(inf.out);
  CHECK(it[1][column(it, "p_model")] == "infeasible");
  CHECK(it[2][column(it, "p_model")] != "infeasible");

  const auto ask = parse_csv(run_cli({"sweep", "--format", "ask3", "--loss", "0", "--gamma", "0.2",
                                      "--nbar", "1"})
                                 .out);
  CHECK(std::stod(ask[1][column(ask, "p_model")]) == doctest::Approx(ask3_error(1, 0.2)).epsilon(1e-9));
  CHECK(ask[1][column(ask, "mutual_info")].empty());
}

TEST_CASE("config file with flag override") {
  const auto cfg = tmp("sweep.json");
  write(cfg, R"({"schema_version": 1, "nbar": [1], "loss": [0.5], "gamma": [0.2], "vth": 1.3})");
  const auto a = parse_csv(run_cli({"sweep", "--config", cfg.string()}).out);
  const auto b = parse_csv(run_cli({"sweep", "--config", cfg.string(), "--vth", "1.0"}).out);
  const auto c = parse_csv(run_cli({"sweep", "--loss", "0.5", "--gamma", "0.2", "--nbar", "1"}).out);
  REQUIRE(a.size() == 2);
  CHECK(a[1][column(a, "p_model")] != b[1][column(b, "p_model")]);
  CHECK(b[1] == c[1]);
}

TEST_CASE("--out writes the same bytes as stdout") {
  const auto path = tmp("bounds.csv");
  fs::remove(path);
  const auto r = run_cli({"bounds", "--nbar", "0:2:5", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path) == run_cli({"bounds", "--nbar", "0:2:5"}).out);
}

TEST_CASE("Monte Carlo output is reproducible and independent of threads") {
  const std::vector<std::string> base{"mc",     "--nbar", "0.5,1", "--gamma", "0,0.3", "--loss",
                                      "0,0.4", "--samples", "70000", "--seed", "17"};
  auto with_threads = [&](const std::string& n) {
    auto a = base;
    a.push_back("--threads");
    a.push_back(n);
    return run_cli(a).out;
  };
  const auto one = with_threads("1");
  CHECK(one == with_threads("1"));
  CHECK(one == with_threads("3"));
  CHECK(one == run_cli(base).out);

  auto other = base;
  other[10] = "18";
  CHECK(run_cli(other).out != one);
}

TEST_CASE("analyze reproduces the mc estimate from dumped samples") {
  const auto prefix = tmp("dump").string();
  const auto mc = run_cli({"mc", "--nbar", "1", "--gamma", "0.3333333333333333", "--loss", "0",
                           "--samples", "200000", "--seed", "5", "--dump-samples", prefix});
  REQUIRE(mc.code == 0);
  const auto an = run_cli({"analyze", prefix + "_0.txt", prefix + "_1.txt"});
  REQUIRE(an.code == 0);
  const auto m = parse_csv(mc.out);
  const auto a = parse_csv(an.out);
  CHECK(a[1][column(a, "mean")] == m[1][column(m, "p_mc_mean")]);
  CHECK(a[1][column(a, "std")] == m[1][column(m, "p_mc_std")]);
  CHECK(a[1][column(a, "trials")] == "400000");
  const double mean = std::stod(a[1][column(a, "mean")]);
  const double sd = std::stod(a[1][column(a, "std")]);
  CHECK(std::abs(mean - 0.0023388674905236) < 4 * sd);

  CHECK(run_cli({"mc", "--nbar", "1,2", "--loss", "0", "--samples", "10", "--dump-samples", prefix})
            .code == cli::kUsageError);
}

TEST_CASE("analyze input handling") {
  const auto p0 = tmp("a0.txt");
  const auto p1 = tmp("a1.txt");
  write(p0, "1.0\n0.5\n2\n");
  write(p1, "-1\n-3e-1\n");
  const auto clean = parse_csv(run_cli({"analyze", p0.string(), p1.string()}).out);
  CHECK(clean[1][column(clean, "errors")] == "0");
  CHECK(clean[1][column(clean, "trials")] == "5");
  CHECK(clean[1][column(clean, "mean")] == cli::format_number(0.5 / 6));

  const auto empty = tmp("empty.txt");
  write(empty, "");
  CHECK(run_cli({"analyze", p0.string(), empty.string()}).code == cli::kUsageError);
  const auto bad = tmp("bad.txt");
  write(bad, "1.0\nfoo\n");
  const auto r = run_cli({"analyze", bad.string(), p1.string()});
  CHECK(r.code == cli::kUsageError);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("psk3, ask3, psk4 and crossover subcommands") {
  const auto p = parse_csv(run_cli({"psk3", "--nbar", "1", "--gamma", "0,0.5"}).out);
  REQUIRE(p.size() == 3);
  CHECK(std::abs(std::stod(p[1][column(p, "p_quadrature")]) - 0.183417145731017) < 1e-9);
  CHECK(p[1][column(p, "p_quadrature")] == p[1][column(p, "p_phase")]);
  CHECK(p[2][column(p, "p_coherent")] == p[1][column(p, "p_quadrature")]);
  CHECK(p[1][column(p, "p_mc_mean")].empty());
  CHECK(run_cli({"psk3", "--methods", "bogus"}).code == cli::kUsageError);

  const auto a = parse_csv(run_cli({"ask3", "--nbar", "0.5,1,2", "--gamma", "optimal"}).out);
  for (std::size_t i = 1; i < a.size(); ++i) {
    CHECK(std::abs(std::stod(a[i][column(a, "p_model")]) -
                   std::stod(a[i][column(a, "p_optimal_closed_form")])) < 1e-9);
  }

  const auto q = parse_csv(run_cli({"psk4", "--nbar", "1", "--gamma", "0,0.5"}).out);
  CHECK(q[1][column(q, "snr")] == "1");
  CHECK(q[2][column(q, "snr")] == "0.3333333333");
  CHECK(q[1][column(q, "variance")] == "0.25");

  const auto c = parse_csv(run_cli({"crossover"}).out);
  CHECK(std::abs(std::stod(c[1][0]) - crossover_photon_number()) < 1e-9);
}
