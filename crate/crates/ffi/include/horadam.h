#ifndef HORADAM_H
#define HORADAM_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HoradamBranch {
  HORADAM_BRANCH_INNER = 0,
  HORADAM_BRANCH_OUTER = 1,
  HORADAM_BRANCH_BOUNDARY = 2,
} HoradamBranch;

typedef enum HoradamClass {
  HORADAM_CLASS_S_STAR = 0,
  HORADAM_CLASS_MOCANU = 1,
  HORADAM_CLASS_ALPHA_BLEND = 2,
} HoradamClass;

typedef enum HoradamFamily {
  HORADAM_FAMILY_FIBONACCI = 0,
  HORADAM_FAMILY_LUCAS = 1,
  HORADAM_FAMILY_PELL = 2,
  HORADAM_FAMILY_PELL_LUCAS = 3,
  HORADAM_FAMILY_CHEBYSHEV_FIRST = 4,
  HORADAM_FAMILY_CHEBYSHEV_SECOND = 5,
} HoradamFamily;

// Result code of every fallible call.
typedef enum HoradamStatus {
  HORADAM_STATUS_OK = 0,
  HORADAM_STATUS_NULL_POINTER = 1,
  HORADAM_STATUS_INVALID_ARGUMENT = 2,
  HORADAM_STATUS_ALPHA_OUT_OF_RANGE = 3,
  HORADAM_STATUS_NON_FINITE = 4,
  HORADAM_STATUS_DEGENERATE = 5,
  HORADAM_STATUS_INTERNAL = 6,
  HORADAM_STATUS_PANIC = 7,
} HoradamStatus;

// Opaque class instance: kind, `alpha`, Horadam parameters and `x`.
typedef struct HoradamSpec HoradamSpec;

typedef struct HoradamParamsC {
  double a;
  double b;
  double p;
  double q;
} HoradamParamsC;

// Coefficients of the linear system linking `(a₂, a₃)` to `(u₁, u₂)`.
typedef struct HoradamSystem {
  double c1;
  double e1;
  double e2;
  double f1;
  double f2;
} HoradamSystem;

// Bounds at one `nu`. A vacuous bound is reported as `+INFINITY`; an
// infinite `threshold` means the inner branch applies for every `nu`.
typedef struct HoradamBounds {
  double a2_bound;
  double a3_bound;
  double fs_bound;
  enum HoradamBranch fs_branch;
  double nu;
  double denom;
  double threshold;
  bool h2_degenerate;
} HoradamBounds;

typedef struct HoradamVerifySummary {
  uint64_t trials;
  uint64_t admissible;
  uint64_t violations;
  double max_ratio_a2;
  double max_ratio_a3;
  double max_ratio_fs;
} HoradamVerifySummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string. Do not free.
const char *horadam_version(void);

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next call into this library from the same thread.
const char *horadam_last_error_message(void);

// # Safety
// `out` must be NULL or valid for writes.
enum HoradamStatus horadam_family_params(enum HoradamFamily family, struct HoradamParamsC *out);

// `h_n(x)` for `n >= 1`.
//
// # Safety
// `out` must be NULL or valid for writes.
enum HoradamStatus horadam_eval(struct HoradamParamsC params_in, size_t n, double x, double *out);

// Writes `h_1(x) .. h_len(x)` into `buf`.
//
// # Safety
// `buf` must be NULL or valid for `len` writes.
enum HoradamStatus horadam_sequence(struct HoradamParamsC params_in,
                                    double x,
                                    double *buf,
                                    size_t len);

// Creates a class instance. On success `*out` owns a handle that must be
// released with [`horadam_spec_free`].
//
// # Safety
// `out` must be NULL or valid for writes.
enum HoradamStatus horadam_spec_new(enum HoradamClass class_,
                                    double alpha,
                                    struct HoradamParamsC params_in,
                                    double x,
                                    struct HoradamSpec **out);

// # Safety
// `spec` must be NULL or a handle from [`horadam_spec_new`] not yet freed.
void horadam_spec_free(struct HoradamSpec *spec);

// # Safety
// `spec` must be a live handle; `out` must be NULL or valid for writes.
enum HoradamStatus horadam_spec_coefficient_system(const struct HoradamSpec *spec,
                                                   struct HoradamSystem *out);

// # Safety
// `spec` must be a live handle; `out` must be NULL or valid for writes.
enum HoradamStatus horadam_spec_bounds(const struct HoradamSpec *spec,
                                       double nu,
                                       struct HoradamBounds *out);

// Monte-Carlo certification; deterministic for a given `seed`.
//
// # Safety
// `spec` must be a live handle, `nu` valid for `nu_len` reads and `out`
// NULL or valid for writes.
enum HoradamStatus horadam_spec_verify(const struct HoradamSpec *spec,
                                       const double *nu,
                                       size_t nu_len,
                                       uint64_t trials,
                                       uint64_t seed,
                                       bool strict_schwarz,
                                       struct HoradamVerifySummary *out);

// Same as [`horadam_spec_verify`] but returns the full JSON report. The
// string must be released with [`horadam_string_free`].
//
// # Safety
// As for [`horadam_spec_verify`]; `out_json` must be NULL or valid for writes.
enum HoradamStatus horadam_spec_verify_json(const struct HoradamSpec *spec,
                                            const double *nu,
                                            size_t nu_len,
                                            uint64_t trials,
                                            uint64_t seed,
                                            bool strict_schwarz,
                                            char **out_json);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void horadam_string_free(char *s);

// Returns the message of `status` as a static string. Do not free.
const char *horadam_status_message(enum HoradamStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HORADAM_H */
