// Copyright 2026 The pdkit Authors
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

/* C interface to pdkit.
 *
 * Objects are opaque handles created by *_load or *_solve calls and released
 * by the matching *_free call. Every function that can fail returns a
 * pdk_status; on failure pdk_last_error() describes the problem for the
 * calling thread. Output strings stay valid until the owning handle is freed.
 */

#ifndef PDKIT_PDKIT_H_
#define PDKIT_PDKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PDK_API __declspec(dllexport)
#else
#define PDK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdk_status {
  PDK_OK = 0,
  PDK_MAX_ITERS = 2,   /* finished without meeting the stopping test */
  PDK_ERR_PARSE = 64,  /* unreadable or malformed input */
  PDK_ERR_SEMANTIC = 65,
  PDK_ERR_INTERNAL = 70
} pdk_status;

typedef struct pdk_problem pdk_problem;
typedef struct pdk_lp pdk_lp;
typedef struct pdk_setcover pdk_setcover;
typedef struct pdk_mrf pdk_mrf;
/* Outcome of any solve or check: JSON summary, optional solution and trace. */
typedef struct pdk_report pdk_report;

PDK_API const char* pdk_version(void);
PDK_API const char* pdk_last_error(void);

/* ---- continuous problems ---- */

PDK_API pdk_status pdk_problem_load(const char* path, pdk_problem** out);
PDK_API void pdk_problem_free(pdk_problem* problem);
PDK_API size_t pdk_problem_dim(const pdk_problem* problem);
/* Objective at x; +inf outside the domain. */
PDK_API pdk_status pdk_problem_objective(const pdk_problem* problem, const double* x,
                                         size_t n, double* value);
/* Evaluates the objective at a solution file written by pdk_report_write_solution. */
PDK_API pdk_status pdk_problem_objective_file(const pdk_problem* problem,
                                              const char* path, double* value);

typedef struct pdk_solve_options {
  const char* method; /* admm, fb, fb-rescaled, fb-symmetric, fb2, fbf, projection */
  int max_iters;      /* <= 0 selects the default */
  double tol;         /* <= 0 selects the default */
  double tau;         /* NaN selects the default for each step parameter */
  double sigma;
  double gamma;
  double lambda;
  int random_start;   /* nonzero: x0, v0 uniform in [-1, 1] from seed */
  uint64_t seed;
  int trace_stride;   /* <= 0 selects 1 */
} pdk_solve_options;

PDK_API void pdk_solve_options_init(pdk_solve_options* options);
/* Method names in canonical order, NULL-terminated. */
PDK_API const char* const* pdk_method_names(void);
/* Reformulates the problem as needed for the method, then solves it.
 * Returns PDK_OK or PDK_MAX_ITERS with *out set, or an error. */
PDK_API pdk_status pdk_solve(const pdk_problem* problem, const pdk_solve_options* options,
                             pdk_report** out);
/* 1 when some reformulation makes the method applicable, else 0. */
PDK_API int pdk_method_applicable(const pdk_problem* problem, const char* method);

/* ---- LP certificates ---- */

PDK_API pdk_status pdk_lp_load(const char* path, pdk_lp** out);
PDK_API void pdk_lp_free(pdk_lp* lp);
/* Relaxed complementary slackness for the pair read from two vector files.
 * PDK_OK when the certificate passes, PDK_ERR_SEMANTIC when it fails; *out
 * is set in both cases. */
PDK_API pdk_status pdk_lp_certify(const pdk_lp* lp, const char* x_path, const char* y_path,
                                  double nu_primal, double nu_dual, pdk_report** out);

/* ---- set cover ---- */

PDK_API pdk_status pdk_setcover_load(const char* path, pdk_setcover** out);
PDK_API void pdk_setcover_free(pdk_setcover* instance);
PDK_API pdk_status pdk_setcover_solve(const pdk_setcover* instance, pdk_report** out);

/* ---- MRF ---- */

typedef struct pdk_mrf_options {
  const char* method;        /* dd, graphcut, bruteforce */
  const char* decomposition; /* rows_cols, per_edge, spanning_trees */
  int trees;                 /* spanning_trees count, <= 0 selects 2 */
  int max_iters;             /* <= 0 selects the default */
  double gamma0;             /* NaN selects the default */
  int summable;              /* nonzero: square-summable step schedule */
} pdk_mrf_options;

PDK_API void pdk_mrf_options_init(pdk_mrf_options* options);
PDK_API pdk_status pdk_mrf_load(const char* path, pdk_mrf** out);
PDK_API void pdk_mrf_free(pdk_mrf* model);
PDK_API pdk_status pdk_mrf_solve(const pdk_mrf* model, const pdk_mrf_options* options,
                                 pdk_report** out);

/* ---- reports ---- */

PDK_API void pdk_report_free(pdk_report* report);
PDK_API pdk_status pdk_report_status(const pdk_report* report);
PDK_API const char* pdk_report_json(const pdk_report* report);
/* Solution vector, labeling or cover, one value per line. */
PDK_API pdk_status pdk_report_write_solution(const pdk_report* report, const char* path);
/* CSV trace; an error when the report has none. */
PDK_API pdk_status pdk_report_write_trace(const pdk_report* report, const char* path);
PDK_API int pdk_report_has_trace(const pdk_report* report);

#ifdef __cplusplus
}
#endif

#endif /* PDKIT_PDKIT_H_ */
