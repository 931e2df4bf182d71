/* Copyright 2026 The qicd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the qicd core. All entry points return a status code;
 * outputs go through pointers. On any non-OK status the outputs are
 * untouched and qicd_last_error() describes the failure for the calling
 * thread. Handles returned by the create and compute calls must be released
 * with the matching free call.
 */

#ifndef QICD_QICD_H
#define QICD_QICD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qicd_status {
  QICD_OK = 0,
  QICD_ERR_ARGUMENT = 1, /* invalid parameter or handle */
  QICD_ERR_NUMERICS = 2, /* accuracy target or iteration cap missed */
  QICD_ERR_INTERNAL = 3  /* unexpected failure; report it */
} qicd_status;

/* Message for the most recent failure on this thread; empty string if the
 * last call succeeded. The pointer stays valid until the next qicd call on
 * the same thread. */
const char* qicd_last_error(void);

/* Library version as "major.minor.patch". */
const char* qicd_version(void);

/* ---- scenario -------------------------------------------------------- */

typedef struct qicd_scenario {
  double n_s;   /* signal brightness per mode */
  double kappa; /* round-trip transmissivity in [0, 1] */
  double theta; /* reflection phase */
  double n_b;   /* background brightness per mode */
} qicd_scenario;

typedef struct qicd_conditional {
  double mu;
  double xi;
  double e_therm;
  double het_variance; /* per-quadrature heterodyne variance */
} qicd_conditional;

qicd_status qicd_conditional_params(const qicd_scenario* sc,
                                    qicd_conditional* out);

/* ---- numerics knobs --------------------------------------------------- */

typedef struct qicd_numerics {
  int quad_nodes;      /* 0 = default (128) */
  int cutoff_override; /* 0 = automatic basis dimension */
} qicd_numerics;

/* ---- scalar error probabilities --------------------------------------- */

qicd_status qicd_p_cd(const qicd_scenario* sc, uint64_t m,
                      const qicd_numerics* nm, double* out);

qicd_status qicd_p_ng(const qicd_scenario* sc, uint64_t m, double* out,
                      int* beta_infinite);

qicd_status qicd_p_ci(const qicd_scenario* sc, uint64_t m,
                      const qicd_numerics* nm, double* out);

qicd_status qicd_photon_count_error(const qicd_scenario* sc, uint64_t m,
                                    uint64_t threshold,
                                    const qicd_numerics* nm, double* out);

qicd_status qicd_homodyne_error(const qicd_scenario* sc, uint64_t m,
                                const qicd_numerics* nm, double* out);

/* Optimal counting threshold diagnostics at mode count m. */
typedef struct qicd_threshold_plan {
  double epsilon;
  double n_opt_real;
  uint64_t n_opt_int;
  double m_star;
  uint64_t best_int;
  double best_error;
} qicd_threshold_plan;

qicd_status qicd_optimal_threshold(const qicd_scenario* sc, uint64_t m,
                                   const qicd_numerics* nm,
                                   qicd_threshold_plan* out);

/* ---- error-probability curves ----------------------------------------- */

typedef struct qicd_grid {
  double m_min;
  double m_max;
  int points_per_decade;
} qicd_grid;

typedef struct qicd_curve qicd_curve; /* opaque */

typedef struct qicd_curve_row {
  double m;
  double p_cd;
  double p_ng;
  double p_ci;
  double p_count;
  double r_cd;
  double r_ci;
  double ratio_db;
  uint64_t best_threshold;
} qicd_curve_row;

qicd_status qicd_curve_compute(const qicd_scenario* sc, const qicd_grid* grid,
                               const qicd_numerics* nm, int threads,
                               qicd_curve** out);
qicd_status qicd_curve_size(const qicd_curve* c, size_t* out);
qicd_status qicd_curve_row_get(const qicd_curve* c, size_t index,
                               qicd_curve_row* out);
void qicd_curve_free(qicd_curve* c);

/* Least-squares exponent of -ln p_count over [m_lo, m_hi] and its ratio in
 * dB against the closed-form classical exponent. */
qicd_status qicd_fitted_ratio_db(const qicd_curve* c, const qicd_scenario* sc,
                                 double m_lo, double m_hi, double* r_fit,
                                 double* ratio_db);

/* ---- mode-selective gate ---------------------------------------------- */

typedef struct qicd_qpg qicd_qpg; /* opaque */

/* pump holds pump_len complex lines as interleaved (re, im) pairs; pass
 * NULL with pump_len 0 for the default single resonant line. */
qicd_status qicd_qpg_create(double gamma, double eta, double duration,
                            const double* pump, size_t pump_len,
                            qicd_qpg** out);
/* eta chosen so the resonant line converts completely. */
qicd_status qicd_qpg_create_matched(double gamma, double duration,
                                    qicd_qpg** out);
qicd_status qicd_qpg_transfer(const qicd_qpg* g, int64_t line, double* t_re,
                              double* t_im, double* r_re, double* r_im);
qicd_status qicd_qpg_selectivity(const qicd_qpg* g, int window,
                                 double* conversion_0, double* worst_crosstalk,
                                 int* matched);
void qicd_qpg_free(qicd_qpg* g);

/* ---- source ------------------------------------------------------------ */

typedef struct qicd_source_summary {
  double big_g;      /* Bogoliubov G */
  double g_re;       /* Bogoliubov g */
  double g_im;
  double n_s;        /* |g|^2 */
  int64_t l;         /* comb half-width */
  uint64_t modes;    /* 2 l + 1 */
} qicd_source_summary;

qicd_status qicd_source_report(double coupling_re, double coupling_im,
                               double duration, double bandwidth,
                               qicd_source_summary* out);

qicd_status qicd_bandwidth_from_mismatch(double mismatch_coeff, double budget,
                                         double* out);

/* ---- trial simulation --------------------------------------------------- */

typedef enum qicd_receiver_kind {
  QICD_RECEIVER_PHOTON_COUNT = 0,
  QICD_RECEIVER_HOMODYNE = 1,
  QICD_RECEIVER_HELSTROM_ORACLE = 2
} qicd_receiver_kind;

typedef struct qicd_mc_config {
  qicd_scenario scenario;
  uint64_t m;
  uint64_t trials;
  uint64_t seed;
  int receiver;             /* qicd_receiver_kind */
  uint64_t count_threshold; /* photon-count receiver */
  double homodyne_threshold; /* NAN = per-record optimal */
  int threads;
} qicd_mc_config;

typedef struct qicd_mc_result {
  double empirical_error;
  double ci95_lo;
  double ci95_hi;
  double analytic_ref;
  uint64_t trials;
  uint64_t errors;
} qicd_mc_result;

qicd_status qicd_mc_run(const qicd_mc_config* cfg, qicd_mc_result* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QICD_QICD_H */
