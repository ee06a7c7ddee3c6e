#ifndef TENSCALC_H
#define TENSCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TcPetrov {
  TC_PETROV_I = 0,
  TC_PETROV_II = 1,
  TC_PETROV_III = 2,
  TC_PETROV_D = 3,
  TC_PETROV_N = 4,
  TC_PETROV_O = 5,
} TcPetrov;

/*
 Result of every call.
 */
typedef enum TcStatus {
  TC_STATUS_OK = 0,
  TC_STATUS_NULL_POINTER = 1,
  TC_STATUS_INVALID_UTF8 = 2,
  TC_STATUS_INVALID_INPUT = 3,
  TC_STATUS_COMPUTE_FAILED = 4,
  TC_STATUS_UNCLASSIFIABLE = 5,
  TC_STATUS_PANIC = 6,
} TcStatus;

/*
 Configured abstract algebra.
 */
typedef struct TcAlgebra TcAlgebra;

/*
 Metric or frame with cached curvature.
 */
typedef struct TcMetric TcMetric;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. Owned by the
 library and valid until the next failing call.
 */
const char *tc_last_error(void);

/*
 # Safety
 `s` must come from this library or be NULL.
 */
void tc_string_free(char *s);

/*
 Metric from a catalog entry; `use_frame` selects frame mode.

 # Safety
 `name` is a NUL-terminated string and `out` a valid pointer.
 */
enum TcStatus tc_metric_from_catalog(const char *name, bool use_frame, struct TcMetric **out);

/*
 Metric from the text of a metric definition file.

 # Safety
 `src` is a NUL-terminated string and `out` a valid pointer.
 */
enum TcStatus tc_metric_from_text(const char *src, bool use_frame, struct TcMetric **out);

/*
 # Safety
 `m` comes from this library or is NULL; it is not used afterwards.
 */
void tc_metric_free(struct TcMetric *m);

/*
 Number of coordinates, 0 for a NULL handle.

 # Safety
 `m` is a live handle or NULL.
 */
uintptr_t tc_metric_dim(const struct TcMetric *m);

/*
 Nonzero components of `tensor` (christoffel1, christoffel2, riemann,
 ricci, einstein, weyl, scalar) as a JSON object keyed "t,r,...".

 # Safety
 Live handle, NUL-terminated `tensor`, valid `out`.
 */
enum TcStatus tc_metric_compute(const struct TcMetric *m, const char *tensor, char **out);

/*
 Petrov type of a 4-dimensional Lorentzian frame.

 # Safety
 Live handle and valid `out`.
 */
enum TcStatus tc_metric_petrov(const struct TcMetric *m, enum TcPetrov *out);

/*
 Metric definition text of a catalog entry.

 # Safety
 NUL-terminated `name`, valid `out`.
 */
enum TcStatus tc_catalog_show(const char *name, char **out);

/*
 Algebra of type `kind` ("clifford", "lie_envelop", ...) with `ndims`
 dimension counts.

 # Safety
 NUL-terminated `kind`; `dims` points to `ndims` values (may be NULL
 when `ndims` is 0); valid `out`.
 */
enum TcStatus tc_algebra_new(const char *kind,
                             const uintptr_t *dims,
                             uintptr_t ndims,
                             struct TcAlgebra **out);

/*
 # Safety
 `a` comes from this library or is NULL; it is not used afterwards.
 */
void tc_algebra_free(struct TcAlgebra *a);

/*
 Reduce an expression such as "v2.v1.v1".

 # Safety
 Live handle, NUL-terminated `expr`, valid `out`.
 */
enum TcStatus tc_algebra_simplify(const struct TcAlgebra *a, const char *expr, char **out);

/*
 Contract an indexed expression against metric `metric` and return it
 in canonical form.

 # Safety
 NUL-terminated strings, valid `out`.
 */
enum TcStatus tc_indicial_contract(const char *expr, const char *metric, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TENSCALC_H */
