/*
 * C interface to the dofppr library: degrees-of-freedom penalized piecewise
 * polynomial regression with exact regularization paths and rolling
 * cross-validation.
 *
 * All functions return a dofppr_status. On failure a message describing the
 * error is available from dofppr_last_error() until the next call on the same
 * thread. Strings returned through char** outputs are owned by the caller and
 * must be released with dofppr_string_free().
 */
#ifndef DOFPPR_H
#define DOFPPR_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(dofppr_EXPORTS)
#define DOFPPR_API __declspec(dllexport)
#else
#define DOFPPR_API __declspec(dllimport)
#endif
#else
#define DOFPPR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dofppr_status {
  DOFPPR_OK = 0,
  DOFPPR_ERR_EMPTY_INPUT = 1,
  DOFPPR_ERR_INVALID_SAMPLE = 2,
  DOFPPR_ERR_INDEX = 3,
  DOFPPR_ERR_INFEASIBLE_FIT = 4,
  DOFPPR_ERR_INFEASIBLE = 5,
  DOFPPR_ERR_DUPLICATE_SLOPE = 6,
  DOFPPR_ERR_INVALID_PENALTY = 7,
  DOFPPR_ERR_NOT_ENOUGH_DATA = 8,
  DOFPPR_ERR_INVALID_ARGUMENT = 9,
  DOFPPR_ERR_PARSE = 10,
  DOFPPR_ERR_IO = 11,
  DOFPPR_ERR_INTERNAL = 99
} dofppr_status;

typedef enum dofppr_selection {
  DOFPPR_SELECT_OSE = 0,
  DOFPPR_SELECT_CV = 1
} dofppr_selection;

typedef enum dofppr_metric {
  DOFPPR_METRIC_L2 = 0,
  DOFPPR_METRIC_L1 = 1
} dofppr_metric;

typedef enum dofppr_header {
  DOFPPR_HEADER_DETECT = 0,
  DOFPPR_HEADER_PRESENT = 1,
  DOFPPR_HEADER_ABSENT = 2
} dofppr_header;

typedef struct dofppr_options {
  int nu_max_local;          /* per-segment dof ceiling, default 11 */
  int nu_total;              /* total dof ceiling, 0 = none */
  int exclude_interpolation; /* nonzero: segments of k >= 2 samples get at most k-1 dofs */
  int fixed_gamma;           /* nonzero: use `gamma`, skip cross-validation */
  double gamma;
  dofppr_selection selection;
  dofppr_metric metric;
  unsigned threads;          /* residual/prediction workers, >= 1 */
} dofppr_options;

typedef struct dofppr_series dofppr_series;
typedef struct dofppr_model dofppr_model;

DOFPPR_API const char* dofppr_version(void);
DOFPPR_API const char* dofppr_last_error(void);
DOFPPR_API const char* dofppr_status_name(dofppr_status status);
DOFPPR_API void dofppr_string_free(char* s);

/* Defaults; `threads` is read from DOFPPR_THREADS when set. */
DOFPPR_API void dofppr_options_init(dofppr_options* options);

/* Sorts by time and merges equal times by weighted averaging. `weights` may be
 * NULL for unit weights. */
DOFPPR_API dofppr_status dofppr_series_create(const double* times, const double* values,
                                              const double* weights, size_t n,
                                              dofppr_series** out);
/* `path` "-" reads standard input. `weights_col` is 1-based, 0 ignores weights. */
DOFPPR_API dofppr_status dofppr_series_read_csv(const char* path, dofppr_header header,
                                                size_t weights_col, dofppr_series** out);
DOFPPR_API size_t dofppr_series_length(const dofppr_series* series);
/* Borrowed pointers, valid until the series is freed. */
DOFPPR_API dofppr_status dofppr_series_data(const dofppr_series* series, const double** times,
                                            const double** values, const double** weights);
DOFPPR_API void dofppr_series_free(dofppr_series* series);

DOFPPR_API dofppr_status dofppr_fit(const dofppr_series* series, const dofppr_options* options,
                                    dofppr_model** out);
DOFPPR_API void dofppr_model_free(dofppr_model* model);

DOFPPR_API size_t dofppr_model_segment_count(const dofppr_model* model);
/* 1-based inclusive sample range and dofs of segment `index` (0-based). */
DOFPPR_API dofppr_status dofppr_model_segment(const dofppr_model* model, size_t index,
                                              size_t* first, size_t* last, int* dof);
/* Writes segment_count - 1 breakpoints. */
DOFPPR_API dofppr_status dofppr_model_breaks(const dofppr_model* model, double* out);
/* gamma_cv and gamma_ose are NaN when the penalty was fixed. */
DOFPPR_API dofppr_status dofppr_model_gammas(const dofppr_model* model, double* selected,
                                             double* gamma_cv, double* gamma_ose);
DOFPPR_API dofppr_status dofppr_model_energy(const dofppr_model* model, double* residual,
                                             double* energy);
DOFPPR_API dofppr_status dofppr_model_predict(const dofppr_model* model, const double* t,
                                              size_t n, double* out);
DOFPPR_API dofppr_status dofppr_model_to_json(const dofppr_model* model, char** out);
DOFPPR_API dofppr_status dofppr_model_to_csv(const dofppr_model* model, char** out);

/* Regularization path on the full series, without selection. */
DOFPPR_API dofppr_status dofppr_path_json(const dofppr_series* series,
                                          const dofppr_options* options, char** out);

/* Synthetic data. `preset` is "heavisine", "fixture", "three-piece" or
 * "random"; `spec_json` (may be NULL) overrides with an explicit piecewise
 * polynomial {"breaks": [...], "pieces": [[...], ...]}. n, sigma and seed
 * always come from the arguments. Outputs a CSV series and a ground-truth
 * JSON document. */
DOFPPR_API dofppr_status dofppr_generate(const char* preset, const char* spec_json, size_t n,
                                         double sigma, unsigned long long seed, char** csv,
                                         char** truth_json);

#ifdef __cplusplus
}
#endif

#endif /* DOFPPR_H */
