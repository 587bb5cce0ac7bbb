#ifndef BURES_BURES_H
#define BURES_BURES_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(BURES_BUILDING_LIBRARY)
#define BURES_API __declspec(dllexport)
#else
#define BURES_API __declspec(dllimport)
#endif
#else
#define BURES_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bures_status {
  BURES_OK = 0,
  BURES_OUT_OF_DOMAIN = 1,
  BURES_NON_FINITE_INPUT = 2,
  BURES_DEGENERATE_SPECTRUM = 3,
  BURES_SINGULAR_METRIC = 4,
  BURES_RETRY_EXHAUSTED = 5,
  BURES_DEGREE_OVERFLOW = 6,
  BURES_DEGREE_MISMATCH = 7,
  BURES_INVALID_ARGUMENT = 8,
  BURES_IO_ERROR = 9,
  BURES_INTERNAL_ERROR = 100
} bures_status;

typedef enum bures_method { BURES_MONTE_CARLO = 0, BURES_LATTICE = 1 } bures_method;

/* Coordinate order: alpha, tau, a, beta, b, theta, zeta1, zeta2. */
enum { BURES_DIM = 8, BURES_PAIRS = 28, BURES_INVARIANTS = 6 };

typedef struct bures_context bures_context;

BURES_API bures_status bures_context_create(bures_context** out);
BURES_API void bures_context_destroy(bures_context* ctx);

/* Message of the most recent failed call on ctx; empty string if none. */
BURES_API const char* bures_last_error(const bures_context* ctx);
BURES_API const char* bures_status_name(bures_status status);

/* 0 = use hardware concurrency.  Results do not depend on the thread count. */
BURES_API bures_status bures_set_threads(bures_context* ctx, unsigned threads);
BURES_API bures_status bures_set_calibration(bures_context* ctx, double c);
BURES_API bures_status bures_set_degeneracy_threshold(bures_context* ctx, double threshold);

/* Invariant rows are bures (F), asd (F-), sd (F+); columns ff, ff2, f2f2,
   trf2, f3f3_23, f4f4_12.  Matrices are row-major. */
typedef struct bures_point_report {
  double spectrum[3];
  double g[64];
  double g_inv[64];
  double sqrt_det;
  double scalar;
  double scalar_closed_form;
  double codazzi;
  double invariants[3][6];
  double singular_values[28][8];
} bures_point_report;

BURES_API bures_status bures_point(bures_context* ctx, const double coords[8], bures_point_report* out);

typedef struct bures_estimate {
  double value;
  double std_error;
  uint64_t n_evaluated;
  uint64_t n_rejected;
} bures_estimate;

/* CSV text of the invariant table; release with bures_free_string. */
BURES_API bures_status bures_table_csv(bures_context* ctx, bures_method method, uint64_t samples,
                                       int nodes_per_dim, uint64_t seed, char** csv);
BURES_API bures_status bures_write_table(bures_context* ctx, bures_method method, uint64_t samples,
                                         int nodes_per_dim, uint64_t seed, const char* path);
BURES_API void bures_free_string(char* s);

/* out[0] = |F|^2, out[1] = |F+|^2, out[2] = |F-|^2 */
BURES_API bures_status bures_actions(bures_context* ctx, uint64_t samples, uint64_t seed,
                                     bures_estimate out[3]);

typedef struct bures_codazzi_summary {
  uint64_t n;
  double min;
  double mean;
  double max;
} bures_codazzi_summary;

BURES_API bures_status bures_codazzi_survey(bures_context* ctx, uint64_t samples, uint64_t seed,
                                            bures_codazzi_summary* out);

BURES_API bures_status bures_write_ab_scan(bures_context* ctx, int grid_n, const char* path);

typedef enum bures_check_status { BURES_CHECK_PASS = 0, BURES_CHECK_FAIL = 1, BURES_CHECK_INFO = 2 } bures_check_status;

typedef struct bures_check {
  int criterion;
  const char* id;
  const char* name;
  double measured;
  const char* relation; /* "<", ">", "~" (reference only) or "!" (aborted) */
  double bound;
  bures_check_status status;
  const char* line; /* formatted ASCII line */
} bures_check;

typedef void (*bures_check_callback)(const bures_check* check, void* user);

typedef struct bures_validate_options {
  uint64_t seed;
  uint64_t mc_samples;
  int lattice_nodes;
  const int* criteria; /* NULL or n_criteria == 0 runs all */
  size_t n_criteria;
} bures_validate_options;

BURES_API void bures_validate_options_init(bures_validate_options* opts);

/* failed receives the number of failing checks. */
BURES_API bures_status bures_validate(bures_context* ctx, const bures_validate_options* opts,
                                      bures_check_callback callback, void* user, int* failed);

#ifdef __cplusplus
}
#endif

#endif
