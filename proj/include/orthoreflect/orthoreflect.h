/* Copyright 2026 The orthoreflect Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to liborthoreflect. All objects are opaque handles created and
 * destroyed through this API. Every fallible call returns an orf_status;
 * orf_last_error() gives the message of the most recent failure on the
 * calling thread. Vectors are plain double arrays of length n (the matrix
 * dimension); matrices are passed row-major.
 */
#ifndef ORTHOREFLECT_H
#define ORTHOREFLECT_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#  ifdef ORF_BUILDING
#    define ORF_API __declspec(dllexport)
#  else
#    define ORF_API __declspec(dllimport)
#  endif
#elif __GNUC__ >= 4
#  define ORF_API __attribute__((visibility("default")))
#else
#  define ORF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum orf_status {
    ORF_OK = 0,
    ORF_ERR_INVALID_ARGUMENT = 1,
    ORF_ERR_NON_SQUARE = 2,
    ORF_ERR_NEGATIVE_ENTRY = 3,
    ORF_ERR_NONZERO_DIAGONAL = 4,
    ORF_ERR_NO_CONVERGENCE = 5,
    ORF_ERR_NUMERICAL_BREAKDOWN = 6,
    ORF_ERR_DIMENSION = 7,
    ORF_ERR_INVALID_PATH = 8,
    ORF_ERR_CONFIG = 9,
    ORF_ERR_IO = 10,
    ORF_ERR_BUFFER_TOO_SMALL = 11,
    ORF_ERR_INTERNAL = 12
} orf_status;

/* Curve order matches the ruin-curves CSV columns. */
typedef enum orf_ruin_event {
    ORF_EVENT_T1 = 0,     /* firm 1 ruined, T1 <= t */
    ORF_EVENT_T2 = 1,     /* firm 2 ruined, T2 <= t */
    ORF_EVENT_BOTH = 2,   /* T1 <= t and T2 <= t */
    ORF_EVENT_EITHER = 3, /* T1 <= t or T2 <= t */
    ORF_EVENT_TAU = 4     /* reinsured system fails, tau* <= t */
} orf_ruin_event;

typedef struct orf_matrix orf_matrix;
typedef struct orf_config orf_config;
typedef struct orf_curves orf_curves;

typedef void (*orf_progress_fn)(uint64_t done, uint64_t total, void* user);

ORF_API const char* orf_version(void);
ORF_API const char* orf_last_error(void);
ORF_API const char* orf_status_name(orf_status status);

/* Reflection matrix Q: non-negative, zero diagonal. */
ORF_API orf_status orf_matrix_create(size_t n, const double* q_row_major, orf_matrix** out);
ORF_API void orf_matrix_destroy(orf_matrix* q);
ORF_API size_t orf_matrix_size(const orf_matrix* q);
ORF_API orf_status orf_spectral_radius(const orf_matrix* q, double tol, size_t max_iter,
                                       double* rho);

/* Membership of y in the dual cone C*. On non-membership, witness (may be
 * NULL) receives u in C with u.y < 0. */
ORF_API orf_status orf_cone_test(const orf_matrix* q, const double* y, double eps,
                                 int* member, double* witness);

/* Minimal reflection jump for pre-reflection state y. out receives dL when
 * *member is 1 and the cone witness otherwise. */
ORF_API orf_status orf_minimal_jump(const orf_matrix* q, const double* y, double eps,
                                    int* member, double* out);

/* Fixed-point iteration z <- Gamma[z] from 0. *converged is 0 when the orbit
 * diverged or max_iter was reached; z then holds the last iterate. */
ORF_API orf_status orf_least_fixed_point(const orf_matrix* q, const double* y, double tol,
                                         size_t max_iter, double* z, int* converged,
                                         size_t* iterations);

/* Scenario configuration (JSON). */
ORF_API orf_status orf_config_load(const char* path, orf_config** out);
ORF_API orf_status orf_config_parse(const char* json, orf_config** out);
ORF_API void orf_config_destroy(orf_config* cfg);
/* Writes NUL-terminated JSON into buf; *len receives the length without the
 * terminator. Returns ORF_ERR_BUFFER_TOO_SMALL (and sets *len) if cap is
 * insufficient; buf may be NULL with cap 0 to query the size. */
ORF_API orf_status orf_config_to_json(const orf_config* cfg, char* buf, size_t cap,
                                      size_t* len);
ORF_API void orf_config_set_seed(orf_config* cfg, uint64_t seed);
ORF_API uint64_t orf_config_seed(const orf_config* cfg);

/* Monte Carlo ruin curves. threads == 0 uses all processors. progress may be
 * NULL. Results do not depend on threads. */
ORF_API orf_status orf_ruin_curves(const orf_config* cfg, unsigned threads,
                                   orf_progress_fn progress, void* user, orf_curves** out);
ORF_API void orf_curves_destroy(orf_curves* rc);
ORF_API size_t orf_curves_grid_size(const orf_curves* rc);
ORF_API orf_status orf_curves_point(const orf_curves* rc, orf_ruin_event event, size_t g,
                                    double* t, double* p, double* ci_half_width);
ORF_API orf_status orf_curves_write_csv(const orf_curves* rc, const char* path);

/* Slope at t = 0 of the ruin-time CDF for event. */
ORF_API orf_status orf_initial_intensity(const orf_config* cfg, orf_ruin_event event,
                                         double quad_tol, double* out);

/* Event log of one trial (stream (seed, 0)) for both systems, as CSV. */
ORF_API orf_status orf_simulate_path(const orf_config* cfg, uint64_t seed, const char* path,
                                     int* tau_star_hit);

#ifdef __cplusplus
}
#endif

#endif /* ORTHOREFLECT_H */
