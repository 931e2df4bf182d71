// Copyright 2026 The qicd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qicd/qicd.h"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(QICD_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
    res.out.append(buf, got);
  }
  const int raw = pclose(pipe);
  if (WIFEXITED(raw)) {
    res.code = WEXITSTATUS(raw);
  }
  return res;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("qicd_cli_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::trunc);
  REQUIRE(f.good());
  f << body;
}

std::string read_text(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) {
      out.push_back(line);
    }
  }
  return out;
}

std::vector<std::string> cells_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    out.push_back(cell);
  }
  return out;
}

double cell_value(const std::string& cell) {
  return std::strtod(cell.c_str(), nullptr);
}

// Small scenario that keeps basis dimensions tiny across the whole grid.
const char* kQuickScenario =
    "n_s = 0.1\n"
    "kappa = 0.1\n"
    "n_b = 1\n"
    "threads = 2\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help succeeds and malformed invocations exit with code 2") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("error-curves --no-such-flag").code == 2);
  CHECK(run_cli("no-such-command").code == 2);
  CHECK(run_cli("").code == 2);
}

TEST_CASE("run header prints every effective default") {
  const auto res = run_cli("source-report");
  REQUIRE(res.code == 0);
  CHECK(res.out.find("n_s = 0.001") != std::string::npos);
  CHECK(res.out.find("kappa = 0.01") != std::string::npos);
  CHECK(res.out.find("n_b = 20") != std::string::npos);
  CHECK(res.out.find("points_per_decade = 50") != std::string::npos);
  CHECK(res.out.find("quad_nodes = 128") != std::string::npos);
  CHECK(res.out.find("trials = 100000") != std::string::npos);
  CHECK(res.out.find("seed = 1") != std::string::npos);
  CHECK(res.out.find("receiver = photon-count") != std::string::npos);
  CHECK(res.out.find("homodyne_threshold = optimal") != std::string::npos);
  CHECK(res.out.find("qpg_gamma_hz = 10000") != std::string::npos);
  CHECK(res.out.find("qpg_eta = matched") != std::string::npos);
  CHECK(res.out.find("source_duration = 9.9999999999999995e-07") !=
        std::string::npos);
  CHECK(res.out.find("bandwidth_hz = 100000000000") != std::string::npos);
  // Published mode budget: 2 * floor(Omega T / 4 pi) + 1.
  CHECK(res.out.find("modes = 100001") != std::string::npos);
}

TEST_CASE("qpg report covers the window and the selectivity summary") {
  const std::string cfg = temp_path("qpg.cfg");
  const std::string csv = temp_path("qpg.csv");
  write_text(cfg, "window = 5\n");
  const auto res = run_cli("qpg-report --config " + cfg + " --out " + csv);
  REQUIRE(res.code == 0);
  CHECK(res.out.find("conversion_0 = 1\n") != std::string::npos);
  CHECK(res.out.find("matched = 1") != std::string::npos);

  const auto rows = lines_of(read_text(csv));
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "n,t_abs2,r_abs2,arg_t");
  bool found_center = false;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto cells = cells_of(rows[i]);
    REQUIRE(cells.size() == 4);
    if (cells[0] == "0") {
      found_center = true;
      CHECK(cell_value(cells[1]) == doctest::Approx(1.0).epsilon(1e-12));
      // Reconstructing eta = sqrt(gamma T) leaves a residual reflection at
      // the rounding floor, not an exact zero.
      CHECK(cell_value(cells[2]) <= 1e-24);
    }
  }
  CHECK(found_center);
  std::filesystem::remove(cfg);
  std::filesystem::remove(csv);
}

TEST_CASE("zero coupling reports a transparent gate") {
  const std::string cfg = temp_path("qpg0.cfg");
  const std::string csv = temp_path("qpg0.csv");
  write_text(cfg, "window = 5\nqpg_eta = 0\n");
  const auto res = run_cli("qpg-report --config " + cfg + " --out " + csv);
  REQUIRE(res.code == 0);
  CHECK(res.out.find("conversion_0 = 0") != std::string::npos);
  const auto rows = lines_of(read_text(csv));
  REQUIRE(rows.size() == 12);
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto cells = cells_of(rows[i]);
    REQUIRE(cells.size() == 4);
    CHECK(cell_value(cells[1]) == 0.0);
    CHECK(cell_value(cells[2]) == 1.0);
  }
  std::filesystem::remove(cfg);
  std::filesystem::remove(csv);
}

TEST_CASE("error curves write the documented csv") {
  const std::string cfg = temp_path("curve.cfg");
  const std::string csv_a = temp_path("curve_a.csv");
  const std::string csv_b = temp_path("curve_b.csv");
  write_text(cfg, std::string(kQuickScenario) +
                      "m_min = 1000\nm_max = 3162\npoints_per_decade = 4\n");
  REQUIRE(run_cli("error-curves --config " + cfg + " --out " + csv_a).code ==
          0);
  REQUIRE(run_cli("error-curves --config " + cfg + " --out " + csv_b).code ==
          0);
  const std::string text = read_text(csv_a);
  CHECK(text == read_text(csv_b));

  const auto rows = lines_of(text);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "M,p_cd,p_ng,p_ci,p_count,r_cd,r_ci,ratio_db");
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto cells = cells_of(rows[i]);
    REQUIRE(cells.size() == 8);
    const double p_cd = cell_value(cells[1]);
    const double p_ng = cell_value(cells[2]);
    const double p_ci = cell_value(cells[3]);
    CHECK(p_ng <= p_cd);
    CHECK(p_cd <= p_ci);
  }

  // 17 significant digits round-trip the exact library value.
  const auto first = cells_of(rows[1]);
  CHECK(first[0] == "1000");
  const qicd_scenario sc{0.1, 0.1, 0.0, 1.0};
  double direct = 0.0;
  REQUIRE(qicd_p_cd(&sc, 1000, nullptr, &direct) == QICD_OK);
  CHECK(cell_value(first[1]) == direct);
  std::filesystem::remove(cfg);
  std::filesystem::remove(csv_a);
  std::filesystem::remove(csv_b);
}

TEST_CASE("zero transmissivity pins the conversion column at a coin flip") {
  const std::string cfg = temp_path("flat.cfg");
  const std::string csv = temp_path("flat.csv");
  write_text(cfg,
             "n_s = 0.1\nkappa = 0\nn_b = 1\nthreads = 2\n"
             "m_min = 1000\nm_max = 3162\npoints_per_decade = 4\n");
  REQUIRE(run_cli("error-curves --config " + cfg + " --out " + csv).code == 0);
  const auto rows = lines_of(read_text(csv));
  REQUIRE(rows.size() == 4);
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(cell_value(cells_of(rows[i])[1]) == 0.5);
  }
  std::filesystem::remove(cfg);
  std::filesystem::remove(csv);
}

TEST_CASE("svg output draws curves and the dashed transition marker") {
  const std::string cfg = temp_path("svg.cfg");
  const std::string svg = temp_path("plot.svg");
  // m_star for this scenario sits near 893, inside the plotted range.
  write_text(cfg, std::string(kQuickScenario) +
                      "m_min = 500\nm_max = 3162\npoints_per_decade = 4\n");
  REQUIRE(run_cli("error-curves --config " + cfg + " --svg " + svg).code == 0);
  const std::string body = read_text(svg);
  CHECK(body.rfind("<svg", 0) == 0);
  CHECK(body.find("polyline") != std::string::npos);
  CHECK(body.find("stroke-dasharray") != std::string::npos);
  CHECK(body.find("m_star") != std::string::npos);
  std::filesystem::remove(cfg);
  std::filesystem::remove(svg);
}

TEST_CASE("exponent ratio reports fit and closed-form limit") {
  const std::string cfg = temp_path("fit.cfg");
  const std::string csv = temp_path("fit.csv");
  write_text(cfg, std::string(kQuickScenario) +
                      "m_min = 1000\nm_max = 3162\npoints_per_decade = 4\n"
                      "fit_m_lo = 1000\nfit_m_hi = 3162\n");
  const auto res = run_cli("exponent-ratio --config " + cfg + " --out " + csv);
  REQUIRE(res.code == 0);
  CHECK(res.out.find("ratio_db = ") != std::string::npos);

  const auto rows = lines_of(read_text(csv));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "m_lo,m_hi,r_fit,two_xi,r_ci,ratio_db,ratio_limit_db");
  const auto cells = cells_of(rows[1]);
  REQUIRE(cells.size() == 7);
  // Closed-form limit 10 log10(4 n_b (n_s + 1) / (kappa n_s + n_b + 1)).
  const double limit = 10.0 * std::log10(4.0 * 1.0 * 1.1 / 2.01);
  CHECK(cell_value(cells[6]) == doctest::Approx(limit).epsilon(1e-9));
  CHECK(cell_value(cells[2]) > 0.0);
  std::filesystem::remove(cfg);
  std::filesystem::remove(csv);
}

TEST_CASE("montecarlo reproduces byte for byte under a fixed seed") {
  const std::string cfg = temp_path("mc.cfg");
  const std::string csv_a = temp_path("mc_a.csv");
  const std::string csv_b = temp_path("mc_b.csv");
  write_text(cfg, std::string(kQuickScenario) +
                      "m = 100\ntrials = 2000\nreceiver = photon-count\n");
  REQUIRE(run_cli("montecarlo --config " + cfg + " --seed 7 --out " + csv_a)
              .code == 0);
  REQUIRE(run_cli("montecarlo --config " + cfg + " --seed 7 --out " + csv_b)
              .code == 0);
  const std::string text = read_text(csv_a);
  CHECK(text == read_text(csv_b));

  const auto rows = lines_of(text);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] ==
        "receiver,m,trials,seed,errors,empirical_error,ci95_lo,ci95_hi,"
        "analytic_ref");
  const auto cells = cells_of(rows[1]);
  REQUIRE(cells.size() == 9);
  CHECK(cells[0] == "photon-count");
  CHECK(cells[3] == "7");
  const qicd_scenario sc{0.1, 0.1, 0.0, 1.0};
  double ref = 0.0;
  REQUIRE(qicd_photon_count_error(&sc, 100, 0, nullptr, &ref) == QICD_OK);
  CHECK(cell_value(cells[8]) == ref);
  CHECK(cell_value(cells[5]) ==
        doctest::Approx(cell_value(cells[4]) / 2000.0).epsilon(1e-12));
  std::filesystem::remove(cfg);
  std::filesystem::remove(csv_a);
  std::filesystem::remove(csv_b);
}

TEST_CASE("config mistakes exit with code 2") {
  const std::string cfg = temp_path("bad.cfg");

  write_text(cfg, "trials = 0\n");
  CHECK(run_cli("montecarlo --config " + cfg).code == 2);

  write_text(cfg, "points_per_decade = 2\n");
  CHECK(run_cli("error-curves --config " + cfg).code == 2);

  write_text(cfg, "m_min = 1e6\nm_max = 1e3\n");
  CHECK(run_cli("error-curves --config " + cfg).code == 2);

  write_text(cfg, "no_such_key = 1\n");
  CHECK(run_cli("source-report --config " + cfg).code == 2);

  write_text(cfg, "just a line without assignment\n");
  CHECK(run_cli("source-report --config " + cfg).code == 2);

  write_text(cfg, "receiver = bogus\n");
  CHECK(run_cli("montecarlo --config " + cfg).code == 2);

  CHECK(run_cli("source-report --config " + temp_path("absent.cfg")).code ==
        2);
  CHECK(run_cli("source-report --out /no-such-dir/out.csv").code == 2);

  std::filesystem::remove(cfg);
}

}  // TEST_SUITE
