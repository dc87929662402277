#ifndef TODOROV_H
#define TODOROV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TdvStatus {
  TDV_STATUS_OK = 0,
  TDV_STATUS_NULL_POINTER = 1,
  TDV_STATUS_INVALID_UTF8 = 2,
  TDV_STATUS_PARSE_ERROR = 3,
  TDV_STATUS_VALIDATION_FAILED = 4,
  TDV_STATUS_DESCENT_FAILED = 5,
  TDV_STATUS_UNKNOWN_EXAMPLE = 6,
  TDV_STATUS_RESOLUTION_FAILED = 7,
} TdvStatus;

// Opaque branch configuration.
typedef struct TdvConfig TdvConfig;

typedef struct TdvInvariants {
  int64_t q;
  int64_t p_g;
  int64_t k2;
  int64_t chi;
} TdvInvariants;

typedef struct TdvDoublePlane {
  int64_t chi;
  int64_t kv2;
} TdvDoublePlane;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a configuration document. On success `*out` owns a new handle.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a writable pointer.
enum TdvStatus tdv_config_from_json(const char *json, struct TdvConfig **out);

// Builds a named configuration fixture. `j` is used only by `kummer`;
// pass a negative value to take the default.
//
// # Safety
// `name` must be a valid NUL-terminated string and `out` a writable pointer.
enum TdvStatus tdv_config_from_example(const char *name, int32_t j, struct TdvConfig **out);

// # Safety
// `cfg` must be null or a handle returned by this library and not yet freed.
void tdv_config_free(struct TdvConfig *cfg);

// Writes 1 to `*passed` if every clause holds, 0 otherwise. The failing
// clauses are reported through `tdv_last_error_message`.
//
// # Safety
// `cfg` must be a live handle and `passed` a writable pointer.
enum TdvStatus tdv_config_validate(const struct TdvConfig *cfg, int32_t *passed);

// # Safety
// `cfg` must be a live handle and `out` a writable pointer.
enum TdvStatus tdv_config_invariants(const struct TdvConfig *cfg, struct TdvInvariants *out);

// Number of branch curves `t`, or 0 for a null handle.
//
// # Safety
// `cfg` must be null or a live handle.
size_t tdv_config_branch_count(const struct TdvConfig *cfg);

// Runs up to `max_steps` descent steps and returns the final configuration
// as a new handle. The input handle is left untouched.
//
// # Safety
// `cfg` must be a live handle and `out` a writable pointer.
enum TdvStatus tdv_config_descend(const struct TdvConfig *cfg,
                                  size_t max_steps,
                                  struct TdvConfig **out);

// Serializes the configuration. Free the result with `tdv_string_free`.
//
// # Safety
// `cfg` must be a live handle and `out` a writable pointer.
enum TdvStatus tdv_config_to_json(const struct TdvConfig *cfg, char **out);

// Resolves a plane branch curve given as JSON and reports the invariants
// of the double cover.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a writable pointer.
enum TdvStatus tdv_resolve_plane_json(const char *json, struct TdvDoublePlane *out);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void tdv_string_free(char *s);

// Message for the most recent failure on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *tdv_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *tdv_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TODOROV_H */
