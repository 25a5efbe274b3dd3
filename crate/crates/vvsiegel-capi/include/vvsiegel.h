#ifndef VVSIEGEL_H
#define VVSIEGEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes shared by every entry point.
typedef enum VvsStatus {
  // success
  VVS_STATUS_OK = 0,
  // a required pointer argument was null
  VVS_STATUS_NULL_ARGUMENT = 1,
  // a string argument was not valid UTF-8
  VVS_STATUS_INVALID_UTF8 = 2,
  // the library rejected the input; see `vvs_last_error_message`
  VVS_STATUS_DOMAIN = 3,
  // an internal panic was caught at the boundary
  VVS_STATUS_PANIC = 4,
} VvsStatus;

// Opaque session handle tied to one lattice.
typedef struct VvsSession VvsSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create a session from lattice JSON (`{"gram": [[...]], "name": "..."}`).
//
// # Safety
// `lattice_json` must be a valid nul-terminated string and `out` a valid
// pointer; the result must be released with `vvs_session_free`.
enum VvsStatus vvs_session_new_from_json(const char *lattice_json, struct VvsSession **out);

// Destroy a session; a null handle is a no-op.
//
// # Safety
// `session` must be null or a pointer from `vvs_session_new_from_json` that
// has not been freed yet.
void vvs_session_free(struct VvsSession *session);

// Lattice and discriminant-form summary as JSON.
//
// # Safety
// `session` must be a live session handle and `out` a valid pointer.
enum VvsStatus vvs_session_info_json(const struct VvsSession *session, char **out);

// Weil matrix of a word (JSON as in the CLI), exact when `as_float` is 0.
//
// # Safety
// `session` must be a live handle, `word_json` a valid nul-terminated
// string, `out` a valid pointer.
enum VvsStatus vvs_weil_matrix_json(const struct VvsSession *session,
                                    uint32_t genus,
                                    const char *word_json,
                                    int32_t as_float,
                                    char **out);

// Genus-1 Eisenstein coefficient table (weight and cutoff as "p/q" strings).
//
// # Safety
// `session` must be a live handle, `weight`/`mmax` valid nul-terminated
// strings, `out` a valid pointer.
enum VvsStatus vvs_eisenstein_coeffs_json(const struct VvsSession *session,
                                          const char *weight,
                                          const char *mmax,
                                          int64_t height,
                                          size_t quad_points,
                                          char **out);

// Copy of the last failure message on this thread (empty string if none).
//
// # Safety
// `out` must be a valid pointer; release the string with `vvs_string_free`.
enum VvsStatus vvs_last_error_message(char **out);

// Release a string returned by this library; null is a no-op.
//
// # Safety
// `s` must be null or an unreleased string produced by this library.
void vvs_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* VVSIEGEL_H */
