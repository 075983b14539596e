/* decim: decimated 2d lattice spin systems — C API.
 *
 * Every entry point returns a decim_status; on failure a thread-local
 * message is available through decim_last_error(). Strings returned through
 * char** out-parameters are heap-allocated and must be released with
 * decim_string_free().
 */
#ifndef DECIM_H
#define DECIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum decim_status {
    DECIM_OK = 0,
    DECIM_ERR_CONFIG = 2,  /* invalid arguments or config validation failure */
    DECIM_ERR_RUNTIME = 3  /* runtime failure */
} decim_status;

const char* decim_version(void);

/* message for the most recent failure on this thread; valid until the next
 * failing call */
const char* decim_last_error(void);

void decim_string_free(char* s);

/* Opaque handle: a coupling model plus its truncated interaction kernel.
 * model_json uses the run-config model block, e.g.
 *   {"family":"iso_lr_ising","J":1.0,"alpha1":3.0,"beta":1.2,
 *    "truncation_radius":32}
 */
typedef struct decim_model decim_model;

decim_status decim_model_create(const char* model_json, decim_model** out);
void decim_model_free(decim_model* m);

/* coupling J((i1,i2),(j1,j2)) of the untruncated model */
decim_status decim_model_coupling(const decim_model* m, int32_t i1, int32_t i2, int32_t j1,
                                  int32_t j2, double* out);

/* upper bound on the coupling mass neglected by the truncation */
decim_status decim_model_tail_mass(const decim_model* m, double* out);

/* worst-case energy difference between boundary conditions agreeing inside
 * box N, summed over the box L (equivalence-of-boundary-conditions bound) */
decim_status decim_model_energy_bound(const decim_model* m, int32_t inner_l, int64_t outer_n,
                                      double* out);

/* smallest N whose energy bound is <= target_c, with the bound achieved and
 * the asymptotic growth exponent of N(L) */
decim_status decim_model_annulus_size(const decim_model* m, int32_t inner_l, double target_c,
                                      int64_t* n_out, double* bound_out, double* exponent_out);

/* Run one command ("magnetize", "probe", "scan", "annulus", "energy-bound",
 * "oracle", "decimate") with a JSON run config. The result document holds
 * {"summary": ..., "artifacts": [{"name": ..., "content": ...}]}; artifact
 * contents are complete file payloads (CSV tables, JSON documents) that the
 * caller writes to disk. Identical config and seeds give byte-identical
 * results. */
decim_status decim_run(const char* command, const char* config_json, char** result_json);

/* validate a config and return the derived plan without sampling */
decim_status decim_plan(const char* command, const char* config_json, char** plan_json);

/* decimate one serialized spin configuration document
 * ({"kind","L","values","frozen"}) */
decim_status decim_decimate_document(const char* configuration_json, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* DECIM_H */
