/* C interface to the DPR1 eigensolver.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every function returning dpr1_status leaves a
 * message for dpr1_last_error() on failure; the message is per thread.
 * Strings returned through char** are released with dpr1_string_free.
 * Eigenpair indices are one-based. */
#ifndef DPR1_DPR1_H
#define DPR1_DPR1_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(DPR1_BUILDING_LIBRARY)
#define DPR1_API __declspec(dllexport)
#else
#define DPR1_API __declspec(dllimport)
#endif
#else
#define DPR1_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as the command-line exit codes. */
typedef enum dpr1_status {
  DPR1_OK = 0,
  DPR1_ERR_INVALID_ARGUMENT = 1,
  DPR1_ERR_PARSE = 2,
  DPR1_ERR_SOLVER = 3,
  DPR1_ERR_EXTENDED_PRECISION = 4,
  DPR1_ERR_IO = 5,
  DPR1_ERR_INTERNAL = 6
} dpr1_status;

typedef enum dpr1_remedy {
  DPR1_REMEDY_NONE = 0,
  DPR1_REMEDY_R1 = 1,
  DPR1_REMEDY_R2 = 2,
  DPR1_REMEDY_RECOMPUTE_VIA_INVERSE = 3
} dpr1_remedy;

typedef enum dpr1_example {
  DPR1_EXAMPLE_1 = 1,
  DPR1_EXAMPLE_2 = 2,
  DPR1_EXAMPLE_3 = 3,
  DPR1_EXAMPLE_4 = 4,
  DPR1_EXAMPLE_RANDOM = 5
} dpr1_example;

typedef struct dpr1_matrix dpr1_matrix;
typedef struct dpr1_result dpr1_result;

typedef struct dpr1_config {
  int use_double;                /* nonzero: recompute b in double-double when needed */
  double kappa_threshold_factor; /* recompute b when kappa_nu > factor * n */
  double K_nu_threshold;         /* remedies engage above this */
  double zero_proximity_factor;  /* near-zero rescue trigger */
  size_t max_bisect_iters;
  unsigned threads;
  double deflation_tol; /* |zeta_i| <= tol * ||z||_inf deflates */
  double tie_tol;       /* |d_i - d_j| <= tol * |d_i| counts as a tie */
} dpr1_config;

typedef struct dpr1_diagnostics {
  double kappa_nu;
  double K_b;
  double K_z;
  double K_nu;
  double nu;
  int used_double_b;
  dpr1_remedy used_remedy;
  size_t bisection_iters;
  int deflated;
} dpr1_diagnostics;

typedef struct dpr1_generate_params {
  dpr1_example example;
  double beta;   /* example 4 */
  size_t n;      /* examples 4 and random; 0 selects the default */
  uint64_t seed; /* random */
  double spread; /* random: decades spanned by the pole magnitudes */
} dpr1_generate_params;

typedef struct dpr1_bench_report {
  size_t n;
  size_t repeat;
  double median_dd_seconds;
  double median_plain_seconds;
  double ratio;
  size_t dd_count;
} dpr1_bench_report;

DPR1_API const char* dpr1_version(void);
DPR1_API const char* dpr1_last_error(void);
DPR1_API void dpr1_string_free(char* s);

DPR1_API void dpr1_config_default(dpr1_config* cfg);
DPR1_API void dpr1_generate_params_default(dpr1_generate_params* p);

/* Matrices: arbitrary finite (d, z, rho) with rho != 0. */
DPR1_API dpr1_status dpr1_matrix_create(const double* d, const double* z, size_t n, double rho,
                                        dpr1_matrix** out);
DPR1_API dpr1_status dpr1_matrix_parse(const char* text, dpr1_matrix** out);
DPR1_API dpr1_status dpr1_matrix_read(const char* path, dpr1_matrix** out);
DPR1_API dpr1_status dpr1_matrix_generate(const dpr1_generate_params* p, dpr1_matrix** out);
DPR1_API dpr1_status dpr1_matrix_format(const dpr1_matrix* m, char** text);
DPR1_API dpr1_status dpr1_matrix_write(const dpr1_matrix* m, const char* path);
DPR1_API size_t dpr1_matrix_size(const dpr1_matrix* m);
DPR1_API dpr1_status dpr1_matrix_data(const dpr1_matrix* m, const double** d, const double** z,
                                      double* rho);
DPR1_API void dpr1_matrix_free(dpr1_matrix* m);

/* Solving. cfg may be NULL for the defaults. */
DPR1_API dpr1_status dpr1_solve(const dpr1_matrix* m, const dpr1_config* cfg, dpr1_result** out);
DPR1_API dpr1_status dpr1_solve_one(const dpr1_matrix* m, size_t k, const dpr1_config* cfg,
                                    dpr1_result** out);

/* Results hold count() eigenpairs of an n x n matrix. */
DPR1_API dpr1_status dpr1_result_parse(const char* text, dpr1_result** out);
DPR1_API dpr1_status dpr1_result_read(const char* path, dpr1_result** out);
DPR1_API size_t dpr1_result_count(const dpr1_result* r);
DPR1_API size_t dpr1_result_dim(const dpr1_result* r);
DPR1_API const double* dpr1_result_lambda(const dpr1_result* r);
DPR1_API const double* dpr1_result_sigma(const dpr1_result* r);
DPR1_API const double* dpr1_result_mu(const dpr1_result* r);
/* Unit eigenvector j (zero-based among the stored pairs), length dim. */
DPR1_API const double* dpr1_result_vector(const dpr1_result* r, size_t j);
DPR1_API dpr1_status dpr1_result_diagnostics(const dpr1_result* r, size_t j,
                                             dpr1_diagnostics* out);
/* Computes O and R against m and stores them in r for dpr1_result_format. */
DPR1_API dpr1_status dpr1_result_measure(dpr1_result* r, const dpr1_matrix* m, double* O,
                                         double* R);
DPR1_API dpr1_status dpr1_result_format(const dpr1_result* r, char** json);
DPR1_API void dpr1_result_free(dpr1_result* r);

/* High-precision reference eigenvalues and eigenvectors as a JSON document
 * with decimal strings. Requires distinct poles. */
DPR1_API dpr1_status dpr1_oracle(const dpr1_matrix* m, int digits, char** json);

DPR1_API dpr1_status dpr1_bench(const dpr1_matrix* m, const dpr1_config* cfg, size_t repeat,
                                dpr1_bench_report* out);

#ifdef __cplusplus
}
#endif

#endif
