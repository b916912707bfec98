// Copyright 2026 The gausscount Authors
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

#ifndef GAUSSCOUNT_GAUSSCOUNT_H
#define GAUSSCOUNT_GAUSSCOUNT_H

/* C interface to gausscount. Matrices are row-major 2n x 2n arrays in the
 * (p_1..p_n, q_1..q_n) block ordering. Handles are opaque; every function
 * returning gc_status leaves its outputs untouched on failure and records a
 * message retrievable with gc_last_error on the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GC_BUILDING_LIBRARY)
#define GC_API __declspec(dllexport)
#else
#define GC_API __declspec(dllimport)
#endif
#else
#define GC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gc_status {
    GC_OK = 0,
    GC_INVALID_ARGUMENT = 1,
    GC_DIMENSION = 2,
    GC_INVALID_COVARIANCE = 3,
    GC_INVALID_UNITARY = 4,
    GC_INVALID_CHANNEL = 5,
    GC_SPECTRAL_PAIRING = 6,
    GC_TRUNCATION = 7,
    GC_MISSING_RECORDS = 8,
    GC_SCHEMA = 9,
    GC_IO = 10,
    GC_NUMERICAL = 11,
    GC_INTERNAL = 99
} gc_status;

typedef struct gc_state gc_state;
typedef struct gc_channel gc_channel;

GC_API const char *gc_version(void);
/* Message of the last failure on this thread; empty after a success. */
GC_API const char *gc_last_error(void);
/* Releases strings returned through char** outputs. */
GC_API void gc_string_free(char *s);

/* States. l and m have n entries, s has 4n^2. */
GC_API gc_status gc_state_create(size_t n, const double *l, const double *m, const double *s, gc_state **out);
GC_API gc_status gc_state_vacuum(size_t n, gc_state **out);
/* Coherent state |psi(u)>, u = x + iy. */
GC_API gc_status gc_state_coherent(size_t n, const double *x, const double *y, gc_state **out);
/* Product of thermal states with parameters t_j > 0. */
GC_API gc_status gc_state_thermal(size_t n, const double *t, gc_state **out);
GC_API gc_status gc_state_from_json(const char *json, gc_state **out);
GC_API gc_status gc_state_to_json(const gc_state *state, char **out);
GC_API void gc_state_destroy(gc_state *state);
GC_API size_t gc_state_modes(const gc_state *state);
/* Any of l, m, s may be NULL. */
GC_API gc_status gc_state_get(const gc_state *state, double *l, double *m, double *s);
GC_API gc_status gc_state_displace(const gc_state *state, const double *x, const double *y, gc_state **out);
/* L must be symplectic. */
GC_API gc_status gc_state_conjugate(const gc_state *state, const double *l_matrix, gc_state **out);
GC_API gc_status gc_state_overlap(const gc_state *a, const gc_state *b, double *out);

/* Photon counting. */
GC_API gc_status gc_total_pgf(const gc_state *state, double x, double *out);
GC_API gc_status gc_mean_number(const gc_state *state, double *out);
GC_API gc_status gc_var_number(const gc_state *state, double *out);
GC_API gc_status gc_prob_zero(const gc_state *state, double *out);
/* out receives kmax + 1 probabilities. */
GC_API gc_status gc_pmf(const gc_state *state, int kmax, double *out);

/* Tomography. */
GC_API size_t gc_state_plan_size(size_t n);
GC_API size_t gc_channel_measurement_count(size_t n);
/* Measures the full plan on truth with exact expectations and reconstructs. */
GC_API gc_status gc_reconstruct_state_exact(const gc_state *truth, gc_state **estimate);
/* Reconstructs from JSON-lines measurement records. valid may be NULL; the
 * estimate is returned even when it violates the uncertainty constraint. */
GC_API gc_status gc_reconstruct_state_records(const char *records_jsonl, size_t n, gc_state **estimate,
                                              int *valid);

/* Channels K(A, B). */
GC_API gc_status gc_channel_create(size_t n, const double *a, const double *b, gc_channel **out);
GC_API void gc_channel_destroy(gc_channel *channel);
GC_API gc_status gc_channel_apply(const gc_channel *channel, const gc_state *state, gc_state **out);

/* Runs "pgf", "tomo-state", "tomo-channel" or "oracle-compare" on a JSON
 * config. Returns GC_OK whenever a report was produced; exit_code then holds
 * 0 (success), 2 (validation), 3 (numerical acceptance) or 4 (I/O). Relative
 * paths in the config resolve against base_dir (may be NULL). */
GC_API gc_status gc_run_command(const char *command, const char *config_json, const char *base_dir, uint64_t seed,
                                int has_seed, char **report_json, int *exit_code);

#ifdef __cplusplus
}
#endif

#endif
