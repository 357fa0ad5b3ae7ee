#ifndef BQG_H
#define BQG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BqgStatus {
  BQG_STATUS_OK = 0,
  BQG_STATUS_NULL_POINTER = 1,
  BQG_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed instance: parse error, bad group data, unknown preset.
   */
  BQG_STATUS_CONFIG = 3,
  /**
   * A computation or audit failed.
   */
  BQG_STATUS_COMPUTATION = 4,
  BQG_STATUS_OUT_OF_RANGE = 5,
  /**
   * The instance kind has no finite fusion ring.
   */
  BQG_STATUS_UNSUPPORTED = 6,
  BQG_STATUS_PANIC = 7,
} BqgStatus;

/**
 * Opaque instance handle.
 */
typedef struct BqgInstance BqgInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a built-in instance by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum BqgStatus bqg_instance_from_preset(const char *name, struct BqgInstance **out);

/**
 * Build an instance from a JSON instance document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum BqgStatus bqg_instance_from_json(const char *json, struct BqgInstance **out);

/**
 * Release an instance. Null is accepted.
 *
 * # Safety
 * `h` must be null or a handle returned by this library and not yet freed.
 */
void bqg_instance_free(struct BqgInstance *h);

/**
 * Number of irreducible classes.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum BqgStatus bqg_class_count(const struct BqgInstance *h, uintptr_t *out);

/**
 * Dimension of class `x`.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum BqgStatus bqg_class_dim(const struct BqgInstance *h, uintptr_t x, uintptr_t *out);

/**
 * Class of the conjugate of `x`.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum BqgStatus bqg_conjugate(const struct BqgInstance *h, uintptr_t x, uintptr_t *out);

/**
 * Multiplicity of `z` in `x ⊗ y`. The table is computed on first use.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum BqgStatus bqg_fusion(const struct BqgInstance *h,
                          uintptr_t x,
                          uintptr_t y,
                          uintptr_t z,
                          uintptr_t *out);

/**
 * Number of fusion entries that differ from the independent oracle
 * (characters for `G ⋊ Λ`, the Haar state for twists).
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum BqgStatus bqg_oracle_mismatches(const struct BqgInstance *h, uintptr_t *out);

/**
 * Message for the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call into this library on the thread.
 */
const char *bqg_last_error(void);

/**
 * Library version, static storage.
 */
const char *bqg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BQG_H */
