#ifndef MONOIDKIT_H
#define MONOIDKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MkStatus {
  MkStatus_Ok = 0,
  MkStatus_NullPointer = 1,
  MkStatus_Utf8 = 2,
  MkStatus_Parse = 3,
  MkStatus_Invalid = 4,
  MkStatus_BoundExceeded = 5,
  MkStatus_Unsupported = 6,
  MkStatus_WrongKind = 7,
  MkStatus_BufferTooSmall = 8,
  MkStatus_Panic = 9,
} MkStatus;

/**
 * A validated document: monoid, A-set, sequence, complex, simplicial A-set or scheme.
 */
typedef struct MkObject MkObject;

/**
 * Loaded monoids and bounds.
 */
typedef struct MkWorkspace MkWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Owned by the library.
 */
const char *mk_last_error(void);

/**
 * New workspace; `carrier_bound == 0` keeps the default.
 */
struct MkWorkspace *mk_workspace_new(size_t carrier_bound);

/**
 * # Safety
 * `ws` must come from [`mk_workspace_new`] and not be freed twice.
 */
void mk_workspace_free(struct MkWorkspace *ws);

/**
 * Parse and validate a JSON document. Relative references resolve against `dir`, which may be null.
 *
 * # Safety
 * Pointers must be valid; `json` and `dir` NUL-terminated.
 */
enum MkStatus mk_load_json(struct MkWorkspace *ws,
                           const char *json,
                           const char *dir,
                           struct MkObject **out);

/**
 * # Safety
 * `obj` must come from [`mk_load_json`] and not be freed twice.
 */
void mk_object_free(struct MkObject *obj);

/**
 * Static kind name: `monoid`, `aset`, `aes`, `dacomplex`, `simplicial` or `scheme`.
 *
 * # Safety
 * `obj` must be a live handle or null.
 */
const char *mk_object_kind(const struct MkObject *obj);

/**
 * Number of elements of a finite monoid, or points of an A-set.
 *
 * # Safety
 * `obj` and `out` must be valid.
 */
enum MkStatus mk_size(const struct MkObject *obj, size_t *out);

/**
 * Number of primes and the Krull dimension of a finite monoid.
 *
 * # Safety
 * Pointers must be valid.
 */
enum MkStatus mk_mspec(const struct MkObject *obj, size_t *primes, size_t *dimension);

/**
 * Rank of `Tor_1(F1[t]/(t^k), X)` for an `F1[t]`-set.
 *
 * # Safety
 * Pointers must be valid.
 */
enum MkStatus mk_tor1_rank(const struct MkObject *obj, size_t k, size_t *out);

/**
 * `Pic` of a scheme as free rank plus invariant factors written to `torsion[..cap]`.
 *
 * # Safety
 * Pointers must be valid; `torsion` must hold `cap` entries.
 */
enum MkStatus mk_pic(const struct MkObject *obj,
                     size_t *free_rank,
                     uint64_t *torsion,
                     size_t cap,
                     size_t *len);

/**
 * `Cl` of a normal scheme, in the same layout as [`mk_pic`].
 *
 * # Safety
 * Pointers must be valid; `torsion` must hold `cap` entries.
 */
enum MkStatus mk_class_group(const struct MkObject *obj,
                             size_t *free_rank,
                             uint64_t *torsion,
                             size_t cap,
                             size_t *len);

/**
 * Run the command line with `argv[0..argc]` (no program name). Output is freed with [`mk_string_free`].
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `out` and `exit_code` must be valid.
 */
enum MkStatus mk_run(const char *const *argv,
                     size_t argc,
                     char **out,
                     int32_t *exit_code);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void mk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONOIDKIT_H */
