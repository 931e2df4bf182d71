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

// Batch front end over the shared C library. Subcommands reproduce the
// error-probability figure, fit exponents, and emit gate, source, and trial
// reports. Every run prints its full effective configuration, numbers are
// serialized with 17 significant digits, and files land atomically via
// write-temp-then-rename so identical configs give byte-identical outputs.

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qicd/qicd.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerics = 3;

struct Config {
  // Scenario; defaults are the published operating point.
  double n_s = 0.001;
  double kappa = 0.01;
  double theta = 0.0;
  double n_b = 20.0;
  // Mode-count grid.
  double m_min = 1e3;
  double m_max = 4e7;
  int points_per_decade = 50;
  // Numerics knobs; zero cutoff means automatic basis sizing.
  int quad_nodes = 128;
  int cutoff_override = 0;
  int threads = 0;
  // Exponent fit window.
  double fit_m_lo = 1e4;
  double fit_m_hi = 1e6;
  // Trial simulation.
  std::uint64_t m = 100000;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string receiver = "photon-count";
  std::uint64_t count_threshold = 0;
  std::string homodyne_threshold = "optimal";
  // Gate report; linewidth and comb line spacing as laboratory frequencies.
  double qpg_gamma_hz = 1e4;
  double qpg_line_spacing_hz = 1e6;
  std::string qpg_eta = "matched";
  int window = 100;
  // Source report; bandwidth in Hz, converted to rad/s at the call site.
  double coupling_re = std::asinh(std::sqrt(0.001));
  double coupling_im = 0.0;
  double source_duration = 1e-6;
  double bandwidth_hz = 1e11;
  // Outputs; empty paths skip the corresponding file.
  std::string csv_path;
  std::string svg_path;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& v, double* out) {
  if (v.empty()) {
    return false;
  }
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || errno == ERANGE) {
    return false;
  }
  *out = d;
  return true;
}

bool parse_u64(const std::string& v, std::uint64_t* out) {
  if (v.empty() || v[0] == '-') {
    return false;
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long u = std::strtoull(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || errno == ERANGE) {
    return false;
  }
  *out = u;
  return true;
}

bool parse_int(const std::string& v, int* out) {
  double d = 0.0;
  if (!parse_double(v, &d) || d != std::floor(d) || std::abs(d) > 1e9) {
    return false;
  }
  *out = static_cast<int>(d);
  return true;
}

bool set_key(Config* c, const std::string& key, const std::string& value,
             std::string* err) {
  const auto num = [&](double* slot) {
    if (!parse_double(value, slot)) {
      *err = "bad numeric value for " + key + ": " + value;
      return false;
    }
    return true;
  };
  const auto unum = [&](std::uint64_t* slot) {
    if (!parse_u64(value, slot)) {
      *err = "bad unsigned value for " + key + ": " + value;
      return false;
    }
    return true;
  };
  const auto inum = [&](int* slot) {
    if (!parse_int(value, slot)) {
      *err = "bad integer value for " + key + ": " + value;
      return false;
    }
    return true;
  };
  if (key == "n_s") return num(&c->n_s);
  if (key == "kappa") return num(&c->kappa);
  if (key == "theta") return num(&c->theta);
  if (key == "n_b") return num(&c->n_b);
  if (key == "m_min") return num(&c->m_min);
  if (key == "m_max") return num(&c->m_max);
  if (key == "points_per_decade") return inum(&c->points_per_decade);
  if (key == "quad_nodes") return inum(&c->quad_nodes);
  if (key == "cutoff_override") return inum(&c->cutoff_override);
  if (key == "threads") return inum(&c->threads);
  if (key == "fit_m_lo") return num(&c->fit_m_lo);
  if (key == "fit_m_hi") return num(&c->fit_m_hi);
  if (key == "m") return unum(&c->m);
  if (key == "trials") return unum(&c->trials);
  if (key == "seed") return unum(&c->seed);
  if (key == "receiver") { c->receiver = value; return true; }
  if (key == "count_threshold") return unum(&c->count_threshold);
  if (key == "homodyne_threshold") { c->homodyne_threshold = value; return true; }
  if (key == "qpg_gamma_hz") return num(&c->qpg_gamma_hz);
  if (key == "qpg_line_spacing_hz") return num(&c->qpg_line_spacing_hz);
  if (key == "qpg_eta") { c->qpg_eta = value; return true; }
  if (key == "window") return inum(&c->window);
  if (key == "coupling_re") return num(&c->coupling_re);
  if (key == "coupling_im") return num(&c->coupling_im);
  if (key == "source_duration") return num(&c->source_duration);
  if (key == "bandwidth_hz") return num(&c->bandwidth_hz);
  if (key == "csv_path") { c->csv_path = value; return true; }
  if (key == "svg_path") { c->svg_path = value; return true; }
  *err = "unknown config key: " + key;
  return false;
}

bool load_config(const std::string& path, Config* c, std::string* err) {
  std::ifstream f(path);
  if (!f) {
    *err = "cannot open config file: " + path;
    return false;
  }
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) {
      continue;
    }
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      *err = path + ":" + std::to_string(lineno) + ": expected key = value";
      return false;
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      *err = path + ":" + std::to_string(lineno) + ": empty key";
      return false;
    }
    if (!set_key(c, key, value, err)) {
      *err = path + ":" + std::to_string(lineno) + ": " + *err;
      return false;
    }
  }
  return true;
}

bool validate(const Config& c, std::string* err) {
  if (!(c.m_min >= 1.0) || !(c.m_min < c.m_max) || !std::isfinite(c.m_max)) {
    *err = "grid requires 1 <= m_min < m_max";
    return false;
  }
  if (c.points_per_decade < 4) {
    *err = "points_per_decade must be at least 4";
    return false;
  }
  if (c.trials == 0) {
    *err = "trials must be positive";
    return false;
  }
  if (c.receiver != "photon-count" && c.receiver != "homodyne" &&
      c.receiver != "helstrom-oracle") {
    *err = "receiver must be photon-count, homodyne, or helstrom-oracle";
    return false;
  }
  double ignored = 0.0;
  if (c.homodyne_threshold != "optimal" &&
      !parse_double(c.homodyne_threshold, &ignored)) {
    *err = "homodyne_threshold must be a number or 'optimal'";
    return false;
  }
  if (c.qpg_eta != "matched" &&
      (!parse_double(c.qpg_eta, &ignored) || ignored < 0.0)) {
    *err = "qpg_eta must be a nonnegative number or 'matched'";
    return false;
  }
  if (c.window < 1) {
    *err = "window must be at least 1";
    return false;
  }
  return true;
}

void print_header(const char* cmd, const Config& c) {
  std::printf("qicd %s %s\n", qicd_version(), cmd);
  std::printf("  n_s = %.17g\n", c.n_s);
  std::printf("  kappa = %.17g\n", c.kappa);
  std::printf("  theta = %.17g\n", c.theta);
  std::printf("  n_b = %.17g\n", c.n_b);
  std::printf("  m_min = %.17g\n", c.m_min);
  std::printf("  m_max = %.17g\n", c.m_max);
  std::printf("  points_per_decade = %d\n", c.points_per_decade);
  std::printf("  quad_nodes = %d\n", c.quad_nodes);
  std::printf("  cutoff_override = %d\n", c.cutoff_override);
  std::printf("  threads = %d\n", c.threads);
  std::printf("  fit_m_lo = %.17g\n", c.fit_m_lo);
  std::printf("  fit_m_hi = %.17g\n", c.fit_m_hi);
  std::printf("  m = %llu\n", static_cast<unsigned long long>(c.m));
  std::printf("  trials = %llu\n", static_cast<unsigned long long>(c.trials));
  std::printf("  seed = %llu\n", static_cast<unsigned long long>(c.seed));
  std::printf("  receiver = %s\n", c.receiver.c_str());
  std::printf("  count_threshold = %llu\n",
              static_cast<unsigned long long>(c.count_threshold));
  std::printf("  homodyne_threshold = %s\n", c.homodyne_threshold.c_str());
  std::printf("  qpg_gamma_hz = %.17g\n", c.qpg_gamma_hz);
  std::printf("  qpg_line_spacing_hz = %.17g\n", c.qpg_line_spacing_hz);
  std::printf("  qpg_eta = %s\n", c.qpg_eta.c_str());
  std::printf("  window = %d\n", c.window);
  std::printf("  coupling_re = %.17g\n", c.coupling_re);
  std::printf("  coupling_im = %.17g\n", c.coupling_im);
  std::printf("  source_duration = %.17g\n", c.source_duration);
  std::printf("  bandwidth_hz = %.17g\n", c.bandwidth_hz);
  std::printf("  csv_path = %s\n",
              c.csv_path.empty() ? "(none)" : c.csv_path.c_str());
  std::printf("  svg_path = %s\n",
              c.svg_path.empty() ? "(none)" : c.svg_path.c_str());
  std::fflush(stdout);
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool write_file_atomic(const std::string& path, const std::string& body,
                       std::string* err) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      *err = "cannot open for writing: " + tmp;
      return false;
    }
    f << body;
    f.flush();
    if (!f) {
      *err = "write failed: " + tmp;
      std::remove(tmp.c_str());
      return false;
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    *err = "rename failed: " + path;
    std::remove(tmp.c_str());
    return false;
  }
  return true;
}

int fail_status(qicd_status st) {
  std::fprintf(stderr, "error: %s\n", qicd_last_error());
  return st == QICD_ERR_ARGUMENT ? kExitConfig : kExitNumerics;
}

int fail_config(const std::string& msg) {
  std::fprintf(stderr, "config error: %s\n", msg.c_str());
  return kExitConfig;
}

qicd_scenario scenario_of(const Config& c) {
  return {c.n_s, c.kappa, c.theta, c.n_b};
}

qicd_numerics numerics_of(const Config& c) {
  return {c.quad_nodes, c.cutoff_override};
}

int compute_rows(const Config& c, std::vector<qicd_curve_row>* rows,
                 qicd_curve** handle) {
  const qicd_scenario sc = scenario_of(c);
  const qicd_grid grid{c.m_min, c.m_max, c.points_per_decade};
  const qicd_numerics nm = numerics_of(c);
  qicd_curve* curve = nullptr;
  qicd_status st = qicd_curve_compute(&sc, &grid, &nm, c.threads, &curve);
  if (st != QICD_OK) {
    return fail_status(st);
  }
  size_t n = 0;
  qicd_curve_size(curve, &n);
  rows->resize(n);
  for (size_t i = 0; i < n; ++i) {
    st = qicd_curve_row_get(curve, i, &(*rows)[i]);
    if (st != QICD_OK) {
      qicd_curve_free(curve);
      return fail_status(st);
    }
    const qicd_curve_row& r = (*rows)[i];
    std::fprintf(stderr, "point %zu/%zu: M=%.0f p_cd=%.6g p_ng=%.6g p_ci=%.6g p_count=%.6g\n",
                 i + 1, n, r.m, r.p_cd, r.p_ng, r.p_ci, r.p_count);
  }
  *handle = curve;
  return 0;
}

// Log-log curve plot with dashed verticals at the published operating point
// and at the predicted threshold-transition mode count.
std::string render_svg(const std::vector<qicd_curve_row>& rows,
                       double m_star) {
  constexpr double kW = 800.0, kH = 560.0;
  constexpr double kL = 70.0, kR = 770.0, kT = 30.0, kB = 510.0;
  struct Series {
    const char* label;
    const char* color;
    double qicd_curve_row::*field;
  };
  const Series series[] = {
      {"p_cd", "#1f77b4", &qicd_curve_row::p_cd},
      {"p_ng", "#2ca02c", &qicd_curve_row::p_ng},
      {"p_ci", "#d62728", &qicd_curve_row::p_ci},
      {"p_count", "#ff7f0e", &qicd_curve_row::p_count},
  };
  const double lx0 = std::log10(rows.front().m);
  const double lx1 = std::log10(rows.back().m);
  double ly0 = -1.0;
  for (const auto& s : series) {
    for (const auto& r : rows) {
      const double v = r.*(s.field);
      if (v > 0.0) {
        ly0 = std::min(ly0, std::log10(v));
      }
    }
  }
  ly0 = std::max(std::floor(ly0), -18.0);
  const double ly1 = 0.0;
  const auto px = [&](double m) {
    return kL + (std::log10(m) - lx0) / (lx1 - lx0) * (kR - kL);
  };
  const auto py = [&](double p) {
    return kB - (std::log10(p) - ly0) / (ly1 - ly0) * (kB - kT);
  };
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + g17(kW) +
         "\" height=\"" + g17(kH) + "\">\n";
  svg += "<rect x=\"70\" y=\"30\" width=\"700\" height=\"480\" fill=\"none\" "
         "stroke=\"black\"/>\n";
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\">M</text>\n",
                0.5 * (kL + kR), kB + 35.0);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"8\" y=\"%.1f\" font-size=\"13\">error</text>\n",
                0.5 * (kT + kB));
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\">1e%d</text>\n",
                kL - 10.0, kB + 18.0, static_cast<int>(std::lround(lx0)));
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\">1e%d</text>\n",
                kR - 20.0, kB + 18.0, static_cast<int>(std::lround(lx1)));
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\">1e%d</text>\n",
                kL - 45.0, kB, static_cast<int>(std::lround(ly0)));
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\">1e0</text>\n",
                kL - 45.0, kT + 6.0);
  svg += buf;
  // Dashed markers; skipped when they fall outside the plotted range.
  const double marks[] = {1e5, m_star};
  const char* mark_names[] = {"M=1e5", "m_star"};
  for (int k = 0; k < 2; ++k) {
    const double m = marks[k];
    if (!std::isfinite(m) || m < rows.front().m || m > rows.back().m) {
      continue;
    }
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.1f\" x2=\"%.2f\" y2=\"%.1f\" "
                  "stroke=\"#555\" stroke-dasharray=\"6 4\"/>\n",
                  px(m), kT, px(m), kB);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.1f\" font-size=\"11\">%s</text>\n",
                  px(m) + 4.0, kT + 14.0, mark_names[k]);
    svg += buf;
  }
  int legend_row = 0;
  for (const auto& s : series) {
    std::string pts;
    for (const auto& r : rows) {
      const double v = r.*(s.field);
      if (!(v > 0.0)) {
        continue;
      }
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(r.m),
                    py(std::max(v, std::pow(10.0, ly0))));
      pts += buf;
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(s.color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                  "fill=\"%s\">%s</text>\n",
                  kR - 90.0, kT + 20.0 + 16.0 * legend_row, s.color, s.label);
    svg += buf;
    ++legend_row;
  }
  svg += "</svg>\n";
  return svg;
}

int cmd_error_curves(const Config& c) {
  std::vector<qicd_curve_row> rows;
  qicd_curve* curve = nullptr;
  const int rc = compute_rows(c, &rows, &curve);
  if (rc != 0) {
    return rc;
  }
  qicd_curve_free(curve);

  std::string csv = "M,p_cd,p_ng,p_ci,p_count,r_cd,r_ci,ratio_db\n";
  for (const auto& r : rows) {
    csv += g17(r.m) + "," + g17(r.p_cd) + "," + g17(r.p_ng) + "," +
           g17(r.p_ci) + "," + g17(r.p_count) + "," + g17(r.r_cd) + "," +
           g17(r.r_ci) + "," + g17(r.ratio_db) + "\n";
  }
  std::string err;
  if (!c.csv_path.empty() && !write_file_atomic(c.csv_path, csv, &err)) {
    return fail_config(err);
  }
  if (!c.svg_path.empty()) {
    // The transition marker is grid independent; a scenario outside the
    // threshold model (for example kappa = 0) just drops the line.
    const qicd_scenario sc = scenario_of(c);
    const qicd_numerics nm = numerics_of(c);
    qicd_threshold_plan plan{};
    double m_star = std::numeric_limits<double>::quiet_NaN();
    if (qicd_optimal_threshold(&sc, 100000, &nm, &plan) == QICD_OK) {
      m_star = plan.m_star;
    }
    if (!write_file_atomic(c.svg_path, render_svg(rows, m_star), &err)) {
      return fail_config(err);
    }
  }
  std::printf("rows = %zu\n", rows.size());
  if (!c.csv_path.empty()) {
    std::printf("csv = %s\n", c.csv_path.c_str());
  }
  if (!c.svg_path.empty()) {
    std::printf("svg = %s\n", c.svg_path.c_str());
  }
  return 0;
}

int cmd_exponent_ratio(const Config& c) {
  std::vector<qicd_curve_row> rows;
  qicd_curve* curve = nullptr;
  int rc = compute_rows(c, &rows, &curve);
  if (rc != 0) {
    return rc;
  }
  const qicd_scenario sc = scenario_of(c);
  double r_fit = 0.0, ratio_db = 0.0;
  qicd_status st =
      qicd_fitted_ratio_db(curve, &sc, c.fit_m_lo, c.fit_m_hi, &r_fit, &ratio_db);
  qicd_curve_free(curve);
  if (st != QICD_OK) {
    return fail_status(st);
  }
  qicd_conditional cond{};
  st = qicd_conditional_params(&sc, &cond);
  if (st != QICD_OK) {
    return fail_status(st);
  }
  const double two_xi = 2.0 * cond.xi;
  const double r_ci = rows.front().r_ci;
  const double ratio_limit_db = 10.0 * std::log10(two_xi / r_ci);

  std::string csv = "m_lo,m_hi,r_fit,two_xi,r_ci,ratio_db,ratio_limit_db\n";
  csv += g17(c.fit_m_lo) + "," + g17(c.fit_m_hi) + "," + g17(r_fit) + "," +
         g17(two_xi) + "," + g17(r_ci) + "," + g17(ratio_db) + "," +
         g17(ratio_limit_db) + "\n";
  std::string err;
  if (!c.csv_path.empty() && !write_file_atomic(c.csv_path, csv, &err)) {
    return fail_config(err);
  }
  std::printf("r_fit = %s\n", g17(r_fit).c_str());
  std::printf("two_xi = %s\n", g17(two_xi).c_str());
  std::printf("r_ci = %s\n", g17(r_ci).c_str());
  std::printf("ratio_db = %s\n", g17(ratio_db).c_str());
  std::printf("ratio_limit_db = %s\n", g17(ratio_limit_db).c_str());
  return 0;
}

int cmd_qpg_report(const Config& c) {
  const double gamma = 2.0 * M_PI * c.qpg_gamma_hz;
  const double period = 1.0 / c.qpg_line_spacing_hz;
  std::string csv = "n,t_abs2,r_abs2,arg_t\n";
  std::string err;

  if (c.qpg_eta != "matched") {
    double eta = 0.0;
    parse_double(c.qpg_eta, &eta);
    if (eta == 0.0) {
      // Transparent limit: zero coupling converts nothing, so the report is
      // written directly instead of through a gate the library would reject.
      for (int n = -c.window; n <= c.window; ++n) {
        csv += std::to_string(n) + ",0,1,0\n";
      }
      if (!c.csv_path.empty() && !write_file_atomic(c.csv_path, csv, &err)) {
        return fail_config(err);
      }
      std::printf("conversion_0 = 0\n");
      std::printf("worst_crosstalk = 0\n");
      std::printf("matched = 0\n");
      return 0;
    }
  }

  qicd_qpg* gate = nullptr;
  qicd_status st;
  if (c.qpg_eta == "matched") {
    st = qicd_qpg_create_matched(gamma, period, &gate);
  } else {
    double eta = 0.0;
    parse_double(c.qpg_eta, &eta);
    st = qicd_qpg_create(gamma, eta, period, nullptr, 0, &gate);
  }
  if (st != QICD_OK) {
    return fail_status(st);
  }
  for (int n = -c.window; n <= c.window; ++n) {
    double t_re = 0.0, t_im = 0.0, r_re = 0.0, r_im = 0.0;
    st = qicd_qpg_transfer(gate, n, &t_re, &t_im, &r_re, &r_im);
    if (st != QICD_OK) {
      qicd_qpg_free(gate);
      return fail_status(st);
    }
    csv += std::to_string(n) + "," + g17(t_re * t_re + t_im * t_im) + "," +
           g17(r_re * r_re + r_im * r_im) + "," + g17(std::atan2(t_im, t_re)) +
           "\n";
  }
  double conv = 0.0, worst = 0.0;
  int matched = 0;
  st = qicd_qpg_selectivity(gate, c.window, &conv, &worst, &matched);
  qicd_qpg_free(gate);
  if (st != QICD_OK) {
    return fail_status(st);
  }
  if (!c.csv_path.empty() && !write_file_atomic(c.csv_path, csv, &err)) {
    return fail_config(err);
  }
  std::printf("conversion_0 = %s\n", g17(conv).c_str());
  std::printf("worst_crosstalk = %s\n", g17(worst).c_str());
  std::printf("matched = %d\n", matched);
  return 0;
}

int cmd_source_report(const Config& c) {
  const double omega = 2.0 * M_PI * c.bandwidth_hz;
  qicd_source_summary s{};
  const qicd_status st = qicd_source_report(c.coupling_re, c.coupling_im,
                                            c.source_duration, omega, &s);
  if (st != QICD_OK) {
    return fail_status(st);
  }
  std::string csv = "G,g_re,g_im,n_s,l,modes,omega_rad_s\n";
  csv += g17(s.big_g) + "," + g17(s.g_re) + "," + g17(s.g_im) + "," +
         g17(s.n_s) + "," + std::to_string(static_cast<long long>(s.l)) + "," +
         std::to_string(static_cast<unsigned long long>(s.modes)) + "," +
         g17(omega) + "\n";
  std::string err;
  if (!c.csv_path.empty() && !write_file_atomic(c.csv_path, csv, &err)) {
    return fail_config(err);
  }
  std::printf("G = %s\n", g17(s.big_g).c_str());
  std::printf("g = %s + %si\n", g17(s.g_re).c_str(), g17(s.g_im).c_str());
  std::printf("n_s = %s\n", g17(s.n_s).c_str());
  std::printf("l = %lld\n", static_cast<long long>(s.l));
  std::printf("modes = %llu\n", static_cast<unsigned long long>(s.modes));
  return 0;
}

int cmd_montecarlo(const Config& c) {
  qicd_mc_config mc{};
  mc.scenario = scenario_of(c);
  mc.m = c.m;
  mc.trials = c.trials;
  mc.seed = c.seed;
  mc.count_threshold = c.count_threshold;
  mc.threads = c.threads;
  if (c.receiver == "photon-count") {
    mc.receiver = QICD_RECEIVER_PHOTON_COUNT;
  } else if (c.receiver == "homodyne") {
    mc.receiver = QICD_RECEIVER_HOMODYNE;
  } else {
    mc.receiver = QICD_RECEIVER_HELSTROM_ORACLE;
  }
  if (c.homodyne_threshold == "optimal") {
    mc.homodyne_threshold = std::numeric_limits<double>::quiet_NaN();
  } else {
    parse_double(c.homodyne_threshold, &mc.homodyne_threshold);
  }
  qicd_mc_result r{};
  const qicd_status st = qicd_mc_run(&mc, &r);
  if (st != QICD_OK) {
    return fail_status(st);
  }
  std::string csv =
      "receiver,m,trials,seed,errors,empirical_error,ci95_lo,ci95_hi,"
      "analytic_ref\n";
  csv += c.receiver + "," + std::to_string(static_cast<unsigned long long>(c.m)) +
         "," + std::to_string(static_cast<unsigned long long>(r.trials)) + "," +
         std::to_string(static_cast<unsigned long long>(c.seed)) + "," +
         std::to_string(static_cast<unsigned long long>(r.errors)) + "," +
         g17(r.empirical_error) + "," + g17(r.ci95_lo) + "," + g17(r.ci95_hi) +
         "," + g17(r.analytic_ref) + "\n";
  std::string err;
  if (!c.csv_path.empty() && !write_file_atomic(c.csv_path, csv, &err)) {
    return fail_config(err);
  }
  std::printf("empirical_error = %s\n", g17(r.empirical_error).c_str());
  std::printf("ci95 = [%s, %s]\n", g17(r.ci95_lo).c_str(),
              g17(r.ci95_hi).c_str());
  std::printf("analytic_ref = %s\n", g17(r.analytic_ref).c_str());
  std::printf("errors = %llu / %llu\n",
              static_cast<unsigned long long>(r.errors),
              static_cast<unsigned long long>(r.trials));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conversion-receiver analysis toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, svg_path;
  std::uint64_t seed = 0;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--out", out_path, "CSV output path");
    sub->add_option("--svg", svg_path, "SVG output path");
    sub->add_option("--seed", seed, "trial RNG seed");
  };
  add_common(app.add_subcommand(
      "error-curves", "error probabilities over a mode-count grid"));
  add_common(app.add_subcommand(
      "exponent-ratio", "fitted error exponent against the classical bench"));
  add_common(
      app.add_subcommand("qpg-report", "gate transfer table and selectivity"));
  add_common(app.add_subcommand("source-report",
                                "pair-source coefficients and mode budget"));
  add_common(
      app.add_subcommand("montecarlo", "trial simulation against analytics"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    app.exit(e);
    return kExitConfig;
  }

  CLI::App* active = app.get_subcommands().at(0);
  Config cfg;
  std::string err;
  if (active->count("--config") > 0 && !load_config(config_path, &cfg, &err)) {
    return fail_config(err);
  }
  if (active->count("--out") > 0) {
    cfg.csv_path = out_path;
  }
  if (active->count("--svg") > 0) {
    cfg.svg_path = svg_path;
  }
  if (active->count("--seed") > 0) {
    cfg.seed = seed;
  }
  if (!validate(cfg, &err)) {
    return fail_config(err);
  }
  const std::string name = active->get_name();
  print_header(name.c_str(), cfg);
  if (name == "error-curves") {
    return cmd_error_curves(cfg);
  }
  if (name == "exponent-ratio") {
    return cmd_exponent_ratio(cfg);
  }
  if (name == "qpg-report") {
    return cmd_qpg_report(cfg);
  }
  if (name == "source-report") {
    return cmd_source_report(cfg);
  }
  return cmd_montecarlo(cfg);
}
