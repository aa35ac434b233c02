/* C interface to the ricci library.
 *
 * Every entry point that produces output takes a `ricci_run** out` and
 * returns a ricci_status. On RICCI_OK and RICCI_CHECKS_FAILED the handle is
 * set and owns the run's report files and check lines; on any other status
 * the handle is left NULL and ricci_last_error() describes the problem.
 * Handles are released with ricci_run_free().
 *
 * `options_json` may be NULL or "{}" for the defaults, or an object with any
 * of the keys "res" (grid resolution, a power of two between 32 and 4096),
 * "order" (finite-difference order, 2 or 4), "tol" (residual tolerance, > 0)
 * and "torus_res" (resolution for torus solves, same range as "res").
 */

#ifndef RICCI_H
#define RICCI_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ricci_status {
    RICCI_OK = 0,
    RICCI_CHECKS_FAILED = 1,
    RICCI_INVALID_INPUT = 2,
    RICCI_INTERNAL_ERROR = 3
} ricci_status;

typedef struct ricci_run ricci_run;

const char* ricci_version(void);

/* Message for the most recent failure on this thread, "" if none. */
const char* ricci_last_error(void);

/* Build and verify a named gallery metric. `param` carries the family index
 * for parametrized entries (zn-family, lorentz-family, spherical-cone) and
 * must be 0 for the rest. */
ricci_status ricci_gallery(const char* name, int param, const char* options_json,
                           ricci_run** out);

/* Verify the curvature equation for a metric document. */
ricci_status ricci_check_metric(const char* metric_json, const char* options_json,
                                ricci_run** out);

/* Flux measurement of a log-harmonic function described by a spec document. */
ricci_status ricci_virtual_measure(const char* spec_json, ricci_run** out);

/* Solve for a flat metric with conical singularities on a torus. */
ricci_status ricci_conical_torus(const char* spec_json, const char* options_json,
                                 ricci_run** out);

/* Hyperbolic polygon gluing report for a genus >= 2 surface. When
 * `use_special` is nonzero `alpha` is ignored and the vertex angle making
 * the total cone angle an exact multiple of 2 pi is used. */
ricci_status ricci_polygon(int genus, double alpha, int use_special, ricci_run** out);

/* 1 when every check of the run passed. */
int ricci_run_passed(const ricci_run* run);

size_t ricci_run_file_count(const ricci_run* run);
const char* ricci_run_file_name(const ricci_run* run, size_t index);
const char* ricci_run_file_content(const ricci_run* run, size_t index);
size_t ricci_run_file_size(const ricci_run* run, size_t index);

size_t ricci_run_check_count(const ricci_run* run);
/* Formatted "[PASS] label: detail" / "[FAIL] label: detail" line. */
const char* ricci_run_check_line(const ricci_run* run, size_t index);

void ricci_run_free(ricci_run* run);

#ifdef __cplusplus
}
#endif

#endif
