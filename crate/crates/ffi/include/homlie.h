#ifndef HOMLIE_H
#define HOMLIE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HomlieStatus {
  HOMLIE_STATUS_OK = 0,
  HOMLIE_STATUS_NULL_POINTER = 1,
  HOMLIE_STATUS_INVALID_UTF8 = 2,
  HOMLIE_STATUS_PARSE = 3,
  HOMLIE_STATUS_INVALID = 4,
  HOMLIE_STATUS_SHAPE = 5,
  HOMLIE_STATUS_DEGREE = 6,
  HOMLIE_STATUS_OUT_OF_RANGE = 7,
  HOMLIE_STATUS_PANIC = 8,
} HomlieStatus;

/**
 * A parsed Hom-Lie algebra.
 */
typedef struct HomlieAlgebra HomlieAlgebra;

/**
 * A parsed Hom-Lie bialgebra.
 */
typedef struct HomlieBialgebra HomlieBialgebra;

/**
 * Per-degree rows of an α-type cohomology computation.
 */
typedef struct HomlieCohomology HomlieCohomology;

typedef struct HomlieRow {
  size_t degree;
  size_t dim_cochains;
  size_t dim_image;
  size_t dim_kernel;
  size_t dim_cohomology;
} HomlieRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Status of the last failed call on this thread, or `HOMLIE_STATUS_OK`.
 */
enum HomlieStatus homlie_last_error_code(void);

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *homlie_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *homlie_version(void);

/**
 * Parses an algebra document (JSON). `*out` receives a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum HomlieStatus homlie_algebra_from_json(const char *json, struct HomlieAlgebra **out);

/**
 * # Safety
 * `g` must be null or a handle from this library that has not been freed.
 */
void homlie_algebra_free(struct HomlieAlgebra *g);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum HomlieStatus homlie_algebra_dim(const struct HomlieAlgebra *g, size_t *out);

/**
 * Writes whether every Hom-Lie axiom holds. A failing axiom is not an error;
 * its name and witness are available through the last-error message.
 *
 * # Safety
 * `g` must be a live handle and `valid` writable.
 */
enum HomlieStatus homlie_algebra_validate(const struct HomlieAlgebra *g, bool *valid);

/**
 * Yau twist by an endomorphism given as a JSON matrix (array of rows or
 * `{"gamma": rows}`). `*out` receives a new handle.
 *
 * # Safety
 * `g` must be a live handle, `gamma_json` NUL-terminated and `out` writable.
 */
enum HomlieStatus homlie_algebra_yau_twist(const struct HomlieAlgebra *g,
                                           const char *gamma_json,
                                           struct HomlieAlgebra **out);

/**
 * Canonical JSON document for the algebra. Release with [`homlie_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum HomlieStatus homlie_algebra_to_json(const struct HomlieAlgebra *g, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library that has not been freed.
 */
void homlie_string_free(char *s);

/**
 * Adjoint α-type cohomology in degrees 1..=max_degree. `*out` receives a new handle.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum HomlieStatus homlie_cohomology(const struct HomlieAlgebra *g,
                                    size_t max_degree,
                                    struct HomlieCohomology **out);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum HomlieStatus homlie_cohomology_len(const struct HomlieCohomology *c, size_t *out);

/**
 * Row `index` (0-based; row i describes degree i + 1).
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum HomlieStatus homlie_cohomology_row(const struct HomlieCohomology *c,
                                        size_t index,
                                        struct HomlieRow *out);

/**
 * # Safety
 * `c` must be null or a live handle.
 */
void homlie_cohomology_free(struct HomlieCohomology *c);

/**
 * Parses a document that carries a cobracket. `*out` receives a new handle.
 *
 * # Safety
 * `json` must be NUL-terminated and `out` writable.
 */
enum HomlieStatus homlie_bialgebra_from_json(const char *json, struct HomlieBialgebra **out);

/**
 * # Safety
 * `b` must be null or a live handle.
 */
void homlie_bialgebra_free(struct HomlieBialgebra *b);

/**
 * Writes whether every bialgebra axiom holds.
 *
 * # Safety
 * `b` must be a live handle and `valid` writable.
 */
enum HomlieStatus homlie_bialgebra_validate(const struct HomlieBialgebra *b, bool *valid);

/**
 * Number of nonzero blocks of ∂∘∂ on the bialgebra complex up to `max_degree`.
 *
 * # Safety
 * `b` must be a live handle and `failures` writable.
 */
enum HomlieStatus homlie_bialgebra_d_squared_failures(const struct HomlieBialgebra *b,
                                                      size_t max_degree,
                                                      size_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOMLIE_H */
