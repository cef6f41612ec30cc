#ifndef NUMRAD_H
#define NUMRAD_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum NumradStatus {
  NUMRAD_STATUS_OK = 0,
  NUMRAD_STATUS_NULL_POINTER = 1,
  NUMRAD_STATUS_INVALID_ARGUMENT = 2,
  NUMRAD_STATUS_NOT_SQUARE = 3,
  NUMRAD_STATUS_DIMENSION_MISMATCH = 4,
  NUMRAD_STATUS_NON_FINITE = 5,
  NUMRAD_STATUS_CLASS_VIOLATION = 6,
  NUMRAD_STATUS_NO_CONVERGENCE = 7,
  NUMRAD_STATUS_IO = 8,
  NUMRAD_STATUS_PARSE = 9,
  NUMRAD_STATUS_BUFFER_TOO_SMALL = 10,
  NUMRAD_STATUS_PANIC = 11,
} NumradStatus;

typedef enum NumradFormat {
  NUMRAD_FORMAT_MATRIX_MARKET = 0,
  NUMRAD_FORMAT_JSON = 1,
} NumradFormat;

/*
 Operator classes; the values are the bit positions used by `numrad_classify`.
 */
typedef enum NumradClass {
  NUMRAD_CLASS_GENERAL = 0,
  NUMRAD_CLASS_SELF_ADJOINT = 1,
  NUMRAD_CLASS_POSITIVE = 2,
  NUMRAD_CLASS_NORMAL = 3,
  NUMRAD_CLASS_ACCRETIVE_DISSIPATIVE = 4,
  NUMRAD_CLASS_UNITARY = 5,
} NumradClass;

typedef enum NumradInequality {
  NUMRAD_INEQUALITY_NORM_RADIUS_SANDWICH = 0,
  NUMRAD_INEQUALITY_SCALAR_ROTATION = 1,
  NUMRAD_INEQUALITY_KITTANEH = 2,
  NUMRAD_INEQUALITY_MIXED_SCHWARZ = 3,
  NUMRAD_INEQUALITY_SA_JENSEN = 4,
  NUMRAD_INEQUALITY_NORM_ROTATION_POSITIVE = 5,
  NUMRAD_INEQUALITY_CARTESIAN_SANDWICH = 6,
  NUMRAD_INEQUALITY_SUM_ROTATION_V1 = 7,
  NUMRAD_INEQUALITY_RADIUS_KITTANEH_REFINE = 8,
  NUMRAD_INEQUALITY_SUM_ROTATION_V2 = 9,
  NUMRAD_INEQUALITY_NORMAL_SUM_ROTATION = 10,
  NUMRAD_INEQUALITY_AD_NORM_LOWER = 11,
  NUMRAD_INEQUALITY_SUBMULT = 12,
  NUMRAD_INEQUALITY_REVERSE_KITTANEH_REFINE = 13,
  NUMRAD_INEQUALITY_TRIANGLE_REFINE = 14,
} NumradInequality;

typedef enum NumradVerdict {
  NUMRAD_VERDICT_CONFIRMED = 0,
  NUMRAD_VERDICT_VIOLATED = 1,
  NUMRAD_VERDICT_INCONCLUSIVE = 2,
} NumradVerdict;

/*
 Opaque matrix handle.
 */
typedef struct NumradMatrix NumradMatrix;

typedef struct NumradInterval {
  double lo;
  double hi;
} NumradInterval;

typedef struct NumradBracket {
  struct NumradInterval enclosure;
  size_t angles_used;
  size_t refinement_rounds;
  bool converged;
} NumradBracket;

/*
 One inequality report. `link` is a NUL-terminated suffix such as
 `"left"`, or empty for unlinked reports.
 */
typedef struct NumradReport {
  enum NumradInequality inequality;
  char link[16];
  struct NumradInterval lhs;
  struct NumradInterval rhs;
  double slack;
  double tolerance;
  enum NumradVerdict verdict;
} NumradReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the calling thread's most recent failure, or null.
 The pointer stays valid until the next failing call on this thread.
 */
const char *numrad_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *numrad_version(void);

/*
 Creates a `rows` x `cols` matrix from `2 * rows * cols` interleaved doubles.

 # Safety
 `data` must point to `2 * rows * cols` readable doubles; `out` must be writable.
 */
enum NumradStatus numrad_matrix_new(size_t rows,
                                    size_t cols,
                                    const double *data,
                                    struct NumradMatrix **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `m` must be null or a handle from this library that has not been freed.
 */
void numrad_matrix_free(struct NumradMatrix *m);

/*
 # Safety
 `m` must be a live handle; `rows` and `cols` must be writable.
 */
enum NumradStatus numrad_matrix_shape(const struct NumradMatrix *m, size_t *rows, size_t *cols);

/*
 Copies all entries into `data` as interleaved row-major doubles;
 `len` is the capacity of `data` in doubles.

 # Safety
 `m` must be a live handle; `data` must hold `len` writable doubles.
 */
enum NumradStatus numrad_matrix_data(const struct NumradMatrix *m, double *data, size_t len);

/*
 Reads a Matrix Market or JSON matrix file (format from the extension).

 # Safety
 `path` must be a NUL-terminated string; `out` must be writable.
 */
enum NumradStatus numrad_matrix_read(const char *path, struct NumradMatrix **out);

/*
 # Safety
 `m` must be a live handle; `path` a NUL-terminated string.
 */
enum NumradStatus numrad_matrix_write(const struct NumradMatrix *m,
                                      const char *path,
                                      enum NumradFormat format);

/*
 Seeded random matrix of the given class.

 # Safety
 `out` must be writable.
 */
enum NumradStatus numrad_generate(enum NumradClass class_,
                                  size_t n,
                                  uint64_t seed,
                                  double scale,
                                  struct NumradMatrix **out);

/*
 # Safety
 `m` must be a live handle; `out` must be writable.
 */
enum NumradStatus numrad_op_norm(const struct NumradMatrix *m, struct NumradInterval *out);

/*
 Numerical radius bracket. `tol <= 0` selects the default tolerance.

 # Safety
 `m` must be a live handle; `out` must be writable.
 */
enum NumradStatus numrad_numerical_radius(const struct NumradMatrix *m,
                                          double tol,
                                          struct NumradBracket *out);

/*
 Class tags as a bit mask indexed by `NumradClass`. `tol <= 0` selects the default.

 # Safety
 `m` must be a live handle; `mask` must be writable.
 */
enum NumradStatus numrad_classify(const struct NumradMatrix *m, double tol, uint8_t *mask);

/*
 Runs a matrix checker. Single-operand checkers ignore `b`; pair
 checkers need both. Writes up to `cap` reports to `out` and the number
 produced to `count` (also on `NUMRAD_STATUS_BUFFER_TOO_SMALL`). At most
 three reports are produced by any checker.

 # Safety
 `a` (and `b` for pair checkers) must be live handles; `out` must have
 `cap` writable slots; `count` must be writable.
 */
enum NumradStatus numrad_check(enum NumradInequality id,
                               const struct NumradMatrix *a,
                               const struct NumradMatrix *b,
                               struct NumradReport *out,
                               size_t cap,
                               size_t *count);

/*
 Runs a pointwise checker (MIXED_SCHWARZ or SA_JENSEN) for one unit
 vector `x` of `2 * n` interleaved doubles.

 # Safety
 `a` must be a live handle, `x` must hold `2 * n` doubles, `out` must be writable.
 */
enum NumradStatus numrad_check_pointwise(enum NumradInequality id,
                                         const struct NumradMatrix *a,
                                         const double *x,
                                         size_t n,
                                         struct NumradReport *out);

/*
 `|a + b| <= sqrt(2) |a + ib|` for real scalars.

 # Safety
 `out` must be writable.
 */
enum NumradStatus numrad_check_scalar_rotation(double a, double b, struct NumradReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUMRAD_H */
