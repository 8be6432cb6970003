#ifndef KILLING3_H
#define KILLING3_H

/* C interface to the killing3 library. Every handle is opaque; every call that can
   fail returns a k3_status and leaves a message in k3_last_error() (per thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define K3_API __attribute__((visibility("default")))
#else
#define K3_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum k3_status {
  K3_OK = 0,
  K3_ERR_NON_FINITE = 1,
  K3_ERR_DOMAIN,
  K3_ERR_JET_ORDER,
  K3_ERR_UNKNOWN_CATALOG_NAME,
  K3_ERR_BAD_PARAMS,
  K3_ERR_PARSE,
  K3_ERR_TWIST_ZERO,
  K3_ERR_NOT_UNIT_LENGTH,
  K3_ERR_EMPTY_GRID,
  K3_ERR_EMPTY_PROFILE,
  K3_ERR_INADMISSIBLE_PARAMS,
  K3_ERR_ENERGY_DRIFT_EXCEEDED,
  K3_ERR_PHI_VANISHES,
  K3_ERR_BLOW_UP,
  K3_ERR_STEP_FAILURE,
  K3_ERR_ALREADY_LORENTZIAN,
  K3_ERR_IO,
  K3_ERR_INTERNAL = 100
} k3_status;

enum { K3_FORMAT_TEXT = 0, K3_FORMAT_JSONL = 1 };

typedef struct k3_spec k3_spec;
typedef struct k3_report k3_report;

K3_API const char* k3_version(void);
/* Message of the last failed call on this thread; empty if none. */
K3_API const char* k3_last_error(void);
K3_API const char* k3_status_name(k3_status status);
/* 2 for parse/config failures, 3 for numeric failures, 0 for K3_OK. */
K3_API int k3_exit_class(k3_status status);

/* key = value text; grid_csv paths are resolved against base_dir (may be NULL). */
K3_API k3_status k3_spec_parse(const char* text, const char* base_dir, k3_spec** out);
K3_API k3_status k3_spec_load(const char* path, k3_spec** out);
K3_API k3_status k3_spec_catalog(const char* name, const char* const* keys, const double* values, size_t n, k3_spec** out);
K3_API k3_status k3_spec_set_lorentzian(k3_spec* spec, int lorentzian);
K3_API const char* k3_spec_name(const k3_spec* spec);
K3_API void k3_spec_free(k3_spec* spec);

/* Row-major g_ij in the coordinate basis (t, r, theta). */
K3_API k3_status k3_metric_components(const k3_spec* spec, double r, double theta, double g[9]);

typedef struct k3_curvature {
  double S;
  double ric_tt;
  double omega;
  double spectrum[3]; /* closed-form Ricci eigenvalues; NaN for Lorentzian specs */
  double cy_norm;     /* NaN for Lorentzian specs */
} k3_curvature;

K3_API k3_status k3_curvature_at(const k3_spec* spec, double r, double theta, k3_curvature* out);

typedef struct k3_run_config {
  const char* command;   /* analyze, verify, flatness, geodesic, family, lorentz */
  const char* spec_path; /* ignored when spec_text is set */
  const char* spec_text;
  const char* grid;      /* rmin:rmax:nr,tmin:tmax:nt */
  const char* const* tol_names;
  const double* tol_values;
  size_t n_tol;
  uint64_t seed;
  const char* expect;         /* NULL: command default */
  const char* trajectory_dir; /* NULL: no trajectory files */
  size_t threads;             /* 0: KILLING3_THREADS or hardware concurrency */
  size_t samples;
  size_t geodesics;
  double length;
} k3_run_config;

/* Fills the defaults (seed 42, 100 samples, 4 geodesics of length 100). */
K3_API void k3_run_config_init(k3_run_config* config);
K3_API k3_status k3_run(const k3_run_config* config, k3_report** out);

K3_API int k3_report_passed(const k3_report* report);
/* 0 pass, 1 verdict failure. */
K3_API int k3_report_exit_code(const k3_report* report);
K3_API size_t k3_report_point_count(const k3_report* report);
K3_API k3_status k3_report_max_residual(const k3_report* report, const char* key, double* out);
K3_API k3_status k3_report_verdict(const k3_report* report, const char* key, const char** out);
/* Rendered text stays valid until the report is freed or rendered again. */
K3_API k3_status k3_report_render(k3_report* report, int format, const char** out);
/* Atomic write (temporary file and rename). */
K3_API k3_status k3_report_write(k3_report* report, const char* path, int format);
K3_API k3_status k3_report_parse_jsonl(const char* text, k3_report** out);
K3_API void k3_report_free(k3_report* report);

#ifdef __cplusplus
}
#endif

#endif
