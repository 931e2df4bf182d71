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

#include "qicd/qicd.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "qicd/analytic.hpp"
#include "qicd/errors.hpp"
#include "qicd/mc.hpp"
#include "qicd/protocol.hpp"
#include "qicd/qpg.hpp"
#include "qicd/source.hpp"

struct qicd_curve {
  qicd::analytic::ErrorCurve data;
};

struct qicd_qpg {
  qicd::qpg::QpgSpec spec;
};

namespace {

std::string& error_slot() {
  thread_local std::string slot;
  return slot;
}

// Runs `f`; on success clears the thread error slot, otherwise records the
// message and maps the exception type to a status. Outputs must only be
// assigned at the end of `f` so failures leave them untouched.
template <typename F>
qicd_status guarded(F&& f) {
  try {
    f();
    error_slot().clear();
    return QICD_OK;
  } catch (const qicd::NumericsError& e) {
    error_slot() = e.what();
    return QICD_ERR_NUMERICS;
  } catch (const std::invalid_argument& e) {
    error_slot() = e.what();
    return QICD_ERR_ARGUMENT;
  } catch (const std::domain_error& e) {
    error_slot() = e.what();
    return QICD_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    error_slot() = e.what();
    return QICD_ERR_INTERNAL;
  } catch (...) {
    error_slot() = "unidentified failure";
    return QICD_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) {
    throw std::invalid_argument(what);
  }
}

qicd::protocol::ProtocolParams to_params(const qicd_scenario* sc,
                                         uint64_t m) {
  require(sc != nullptr, "scenario pointer is null");
  return {sc->n_s, sc->kappa, sc->theta, sc->n_b, m};
}

qicd::analytic::QuadSettings to_settings(const qicd_numerics* nm) {
  qicd::analytic::QuadSettings q;
  if (nm != nullptr) {
    if (nm->quad_nodes != 0) {
      q.nodes = nm->quad_nodes;
    }
    q.cutoff_override = nm->cutoff_override;
  }
  return q;
}

}  // namespace

extern "C" {

const char* qicd_last_error(void) { return error_slot().c_str(); }

const char* qicd_version(void) { return "0.1.0"; }

qicd_status qicd_conditional_params(const qicd_scenario* sc,
                                    qicd_conditional* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    const auto p = to_params(sc, 1);
    const auto c = qicd::protocol::conditional_params(p);
    out->mu = c.mu;
    out->xi = c.xi;
    out->e_therm = c.e_therm;
    out->het_variance = qicd::protocol::heterodyne_variance(p);
  });
}

qicd_status qicd_p_cd(const qicd_scenario* sc, uint64_t m,
                      const qicd_numerics* nm, double* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = qicd::analytic::p_cd(to_params(sc, m), to_settings(nm));
  });
}

qicd_status qicd_p_ng(const qicd_scenario* sc, uint64_t m, double* out,
                      int* beta_infinite) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    const auto ng = qicd::analytic::ng_bound(to_params(sc, m));
    if (beta_infinite != nullptr) {
      *beta_infinite = ng.beta_infinite ? 1 : 0;
    }
    *out = ng.value;
  });
}

qicd_status qicd_p_ci(const qicd_scenario* sc, uint64_t m,
                      const qicd_numerics* nm, double* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = qicd::analytic::p_ci(to_params(sc, m), to_settings(nm));
  });
}

qicd_status qicd_photon_count_error(const qicd_scenario* sc, uint64_t m,
                                    uint64_t threshold,
                                    const qicd_numerics* nm, double* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = qicd::analytic::photon_count_error(to_params(sc, m), threshold,
                                              to_settings(nm));
  });
}

qicd_status qicd_homodyne_error(const qicd_scenario* sc, uint64_t m,
                                const qicd_numerics* nm, double* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = qicd::analytic::homodyne_error(to_params(sc, m), to_settings(nm));
  });
}

qicd_status qicd_optimal_threshold(const qicd_scenario* sc, uint64_t m,
                                   const qicd_numerics* nm,
                                   qicd_threshold_plan* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    const auto plan =
        qicd::analytic::optimal_threshold(to_params(sc, m), to_settings(nm));
    out->epsilon = plan.epsilon;
    out->n_opt_real = plan.n_opt_real;
    out->n_opt_int = plan.n_opt_int;
    out->m_star = plan.m_star;
    out->best_int = plan.best_int;
    out->best_error = plan.best_error;
  });
}

qicd_status qicd_curve_compute(const qicd_scenario* sc, const qicd_grid* grid,
                               const qicd_numerics* nm, int threads,
                               qicd_curve** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    require(grid != nullptr, "grid pointer is null");
    qicd::analytic::Grid g;
    g.m_min = grid->m_min;
    g.m_max = grid->m_max;
    g.points_per_decade = grid->points_per_decade;
    auto curve = qicd::analytic::compute_error_curve(
        to_params(sc, 1), g, to_settings(nm), threads);
    *out = new qicd_curve{std::move(curve)};
  });
}

qicd_status qicd_curve_size(const qicd_curve* c, size_t* out) {
  return guarded([&] {
    require(c != nullptr, "curve handle is null");
    require(out != nullptr, "output pointer is null");
    *out = c->data.m_grid.size();
  });
}

qicd_status qicd_curve_row_get(const qicd_curve* c, size_t index,
                               qicd_curve_row* out) {
  return guarded([&] {
    require(c != nullptr, "curve handle is null");
    require(out != nullptr, "output pointer is null");
    require(index < c->data.m_grid.size(), "row index out of range");
    out->m = static_cast<double>(c->data.m_grid[index]);
    out->p_cd = c->data.p_cd[index];
    out->p_ng = c->data.p_ng[index];
    out->p_ci = c->data.p_ci[index];
    out->p_count = c->data.p_count[index];
    out->r_cd = c->data.r_cd[index];
    out->r_ci = c->data.r_ci[index];
    out->ratio_db = c->data.ratio_db[index];
    out->best_threshold = c->data.count_threshold[index];
  });
}

void qicd_curve_free(qicd_curve* c) { delete c; }

qicd_status qicd_fitted_ratio_db(const qicd_curve* c, const qicd_scenario* sc,
                                 double m_lo, double m_hi, double* r_fit,
                                 double* ratio_db) {
  return guarded([&] {
    require(c != nullptr, "curve handle is null");
    require(r_fit != nullptr && ratio_db != nullptr,
            "output pointers are null");
    const double fit = qicd::analytic::fitted_exponent(
        c->data.m_grid, c->data.p_count, m_lo, m_hi);
    const double classical =
        qicd::analytic::r_ci_exponent(to_params(sc, 1));
    *r_fit = fit;
    *ratio_db = 10.0 * std::log10(fit / classical);
  });
}

qicd_status qicd_qpg_create(double gamma, double eta, double duration,
                            const double* pump, size_t pump_len,
                            qicd_qpg** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    qicd::qpg::QpgSpec s;
    s.gamma = gamma;
    s.eta = eta;
    s.duration = duration;
    if (pump == nullptr || pump_len == 0) {
      s.pump = {{1.0, 0.0}};
    } else {
      s.pump.reserve(pump_len);
      for (size_t i = 0; i < pump_len; ++i) {
        s.pump.emplace_back(pump[2 * i], pump[2 * i + 1]);
      }
    }
    s.validate();
    *out = new qicd_qpg{std::move(s)};
  });
}

qicd_status qicd_qpg_create_matched(double gamma, double duration,
                                    qicd_qpg** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = new qicd_qpg{qicd::qpg::QpgSpec::matched_design(gamma, duration)};
  });
}

qicd_status qicd_qpg_transfer(const qicd_qpg* g, int64_t line, double* t_re,
                              double* t_im, double* r_re, double* r_im) {
  return guarded([&] {
    require(g != nullptr, "gate handle is null");
    require(t_re != nullptr && t_im != nullptr && r_re != nullptr &&
                r_im != nullptr,
            "output pointers are null");
    const auto tp = qicd::qpg::transfer(g->spec, line);
    *t_re = tp.t.real();
    *t_im = tp.t.imag();
    *r_re = tp.r.real();
    *r_im = tp.r.imag();
  });
}

qicd_status qicd_qpg_selectivity(const qicd_qpg* g, int window,
                                 double* conversion_0, double* worst_crosstalk,
                                 int* matched) {
  return guarded([&] {
    require(g != nullptr, "gate handle is null");
    require(conversion_0 != nullptr && worst_crosstalk != nullptr &&
                matched != nullptr,
            "output pointers are null");
    const auto rep = qicd::qpg::selectivity_report(g->spec, window);
    *conversion_0 = rep.conversion_0;
    *worst_crosstalk = rep.worst_crosstalk;
    *matched = rep.matched ? 1 : 0;
  });
}

void qicd_qpg_free(qicd_qpg* g) { delete g; }

qicd_status qicd_source_report(double coupling_re, double coupling_im,
                               double duration, double bandwidth,
                               qicd_source_summary* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    qicd::source::SourceSpec s;
    s.coupling = {coupling_re, coupling_im};
    s.duration = duration;
    s.bandwidth = bandwidth;
    const auto pair = qicd::source::bogoliubov(s);
    const auto mc = qicd::source::mode_count(s);
    out->big_g = pair.G;
    out->g_re = pair.g.real();
    out->g_im = pair.g.imag();
    out->n_s = pair.n_s();
    out->l = mc.l;
    out->modes = mc.modes;
  });
}

qicd_status qicd_bandwidth_from_mismatch(double mismatch_coeff, double budget,
                                         double* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = qicd::source::bandwidth_from_mismatch(mismatch_coeff, budget);
  });
}

qicd_status qicd_mc_run(const qicd_mc_config* cfg, qicd_mc_result* out) {
  return guarded([&] {
    require(cfg != nullptr, "config pointer is null");
    require(out != nullptr, "output pointer is null");
    qicd::mc::TrialConfig tc;
    tc.params = to_params(&cfg->scenario, cfg->m);
    tc.trials = cfg->trials;
    tc.seed = cfg->seed;
    tc.threads = cfg->threads;
    switch (cfg->receiver) {
      case QICD_RECEIVER_PHOTON_COUNT:
        tc.receiver = qicd::mc::PhotonCountReceiver{cfg->count_threshold};
        break;
      case QICD_RECEIVER_HOMODYNE: {
        qicd::mc::HomodyneReceiver r;
        if (!std::isnan(cfg->homodyne_threshold)) {
          r.threshold = cfg->homodyne_threshold;
        }
        tc.receiver = r;
        break;
      }
      case QICD_RECEIVER_HELSTROM_ORACLE:
        tc.receiver = qicd::mc::HelstromOracleReceiver{};
        break;
      default:
        throw std::invalid_argument("unknown receiver kind");
    }
    const auto r = qicd::mc::run_trials(tc);
    out->empirical_error = r.empirical_error;
    out->ci95_lo = r.ci95_lo;
    out->ci95_hi = r.ci95_hi;
    out->analytic_ref = r.analytic_ref;
    out->trials = r.trials;
    out->errors = r.errors;
  });
}

} /* extern "C" */
