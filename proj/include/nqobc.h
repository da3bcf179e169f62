/*
 * nqobc — pointwise curvature analysis for Kahler metrics.
 *
 * C API of the shared library. All objects are opaque handles created and
 * destroyed here; every fallible call returns an nqobc_status and leaves a
 * human-readable message in nqobc_last_error() (thread-local) on failure.
 * Output parameters are written only on NQOBC_OK.
 *
 * Tensors are pointwise Kahler algebraic curvature tensors: dense complex
 * arrays R[i,j,k,l] = R_{i jbar k lbar}, zero-based, row-major in (i,j,k,l),
 * satisfying the Kahler symmetry identities. Complex arrays cross this API
 * as interleaved [re, im] doubles of length 2*n^4 (tensors) or 2*n^2
 * (matrices), row-major.
 */
#ifndef NQOBC_H
#define NQOBC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nqobc_status {
  NQOBC_OK = 0,
  NQOBC_ERR_ARGUMENT = 1, /* invalid argument or precondition */
  NQOBC_ERR_TENSOR = 2,   /* curvature symmetry violations */
  NQOBC_ERR_IO = 3,       /* file open/read/write failure */
  NQOBC_ERR_PARSE = 4,    /* malformed JSON or schema mismatch */
  NQOBC_ERR_INTERNAL = 5
} nqobc_status;

typedef struct nqobc_tensor nqobc_tensor;
typedef struct nqobc_certificate nqobc_certificate;
typedef struct nqobc_report nqobc_report;

const char* nqobc_version(void);

/* Message for the most recent failure on this thread; empty string if none.
 * Valid until the next failing call on the same thread. */
const char* nqobc_last_error(void);

/* Frees strings returned through char** output parameters. */
void nqobc_string_free(char* s);

/* --- tensor construction ------------------------------------------------ */

nqobc_status nqobc_tensor_flat(int n, nqobc_tensor** out);
nqobc_status nqobc_tensor_constant_hsc(int n, double c, nqobc_tensor** out);
nqobc_status nqobc_tensor_surface(double h, nqobc_tensor** out);
nqobc_status nqobc_tensor_product(const nqobc_tensor* first,
                                  const nqobc_tensor* second,
                                  nqobc_tensor** out);
nqobc_status nqobc_tensor_random(int n, uint64_t seed, double scale,
                                 nqobc_tensor** out);
/* Validates the symmetries; re_im_pairs has 2*n^4 doubles. */
nqobc_status nqobc_tensor_from_components(int n, const double* re_im_pairs,
                                          nqobc_tensor** out);
void nqobc_tensor_free(nqobc_tensor* t);

/* --- tensor queries ------------------------------------------------------ */

/* Complex dimension, or 0 for NULL. */
int nqobc_tensor_dim(const nqobc_tensor* t);
/* Writes 2*n^4 doubles. */
nqobc_status nqobc_tensor_components(const nqobc_tensor* t,
                                     double* re_im_pairs_out);
nqobc_status nqobc_tensor_scalar(const nqobc_tensor* t, double* out);
/* Symmetry diagnostics: violation count (0..3, one per identity) and, when
 * diagnostic_out is non-NULL, a JSON array describing each violation. */
nqobc_status nqobc_tensor_validate(const nqobc_tensor* t, int* violations_out,
                                   char** diagnostic_out);

/* --- tensor files --------------------------------------------------------- */

/* JSON schema {"n": int, "components": [[re, im], ...]}; the loader rejects
 * files with symmetry violations (NQOBC_ERR_TENSOR). */
nqobc_status nqobc_tensor_read_json(const char* path, nqobc_tensor** out);
nqobc_status nqobc_tensor_write_json(const nqobc_tensor* t, const char* path);
/* Same schema plus a "generator" key recording how the tensor was produced
 * (seed and parameters), so files can be replayed; NULL or "" omits it. */
nqobc_status nqobc_tensor_write_json_annotated(const nqobc_tensor* t,
                                               const char* path,
                                               const char* generator);

/* --- NQOBC certification -------------------------------------------------- */

typedef struct nqobc_certify_config {
  int restarts;               /* multistart count, identity frame included */
  int max_iters;              /* descent iterations per restart */
  double violation_tolerance; /* form values below -tolerance are violations */
  uint64_t seed;
  int threads;                /* 0 = hardware concurrency; result-invariant */
} nqobc_certify_config;

void nqobc_certify_config_init(nqobc_certify_config* cfg);

/* Searches U(n) for a frame and xi with negative quadratic orthogonal
 * bisectional curvature form. A "no violation" outcome is heuristic, not a
 * proof. Deterministic given the config, independent of thread count. */
nqobc_status nqobc_certify(const nqobc_tensor* t,
                           const nqobc_certify_config* cfg,
                           nqobc_certificate** out);
/* 1 when a violation was found, 0 otherwise (or on NULL). */
int nqobc_certificate_violation_found(const nqobc_certificate* c);
double nqobc_certificate_min_lambda(const nqobc_certificate* c);
/* Directly re-evaluated witness form value; NaN when no violation. */
double nqobc_certificate_witness_value(const nqobc_certificate* c);
nqobc_status nqobc_certificate_to_json(const nqobc_certificate* c,
                                       char** json_out);
void nqobc_certificate_free(nqobc_certificate* c);

/* --- identity verification and suites ------------------------------------- */

/* Runs the frame-averaging checks on one tensor: the 2*E[F] = E[G] claim,
 * the scalar-curvature average, weighted averages, and exact pointwise
 * rotation identities. */
nqobc_status nqobc_haar_verify(const nqobc_tensor* t, uint64_t samples,
                               uint64_t seed, int threads, nqobc_report** out);

/* name is one of "theorem31", "flatness-n3", "lemma43". */
nqobc_status nqobc_suite_run(const char* name, uint64_t seed, int threads,
                             nqobc_report** out);

int nqobc_report_passed(const nqobc_report* r);
nqobc_status nqobc_report_to_json(const nqobc_report* r, char** json_out);
nqobc_status nqobc_report_to_csv(const nqobc_report* r, char** csv_out);
void nqobc_report_free(nqobc_report* r);

#ifdef __cplusplus
}
#endif

#endif /* NQOBC_H */
