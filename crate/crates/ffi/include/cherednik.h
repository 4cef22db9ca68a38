#ifndef CHEREDNIK_H
#define CHEREDNIK_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum ChkStatus {
  // Success.
  CHK_STATUS_OK = 0,
  // A verification suite ran to completion and found counterexamples.
  CHK_STATUS_SUITE_FAILED = 1,
  // Malformed input (bad rational, wrong arity, unknown name).
  CHK_STATUS_PARSE_ERROR = 2,
  // Structurally valid input outside the supported domain.
  CHK_STATUS_DOMAIN_ERROR = 3,
  // A required pointer argument was null.
  CHK_STATUS_NULL_ARGUMENT = 4,
  // Internal panic; the message carries details.
  CHK_STATUS_INTERNAL = 5,
} ChkStatus;

// Opaque pairing of a root system with a multiplicity function.
typedef struct ChkSystem ChkSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message for this thread; the pointer stays valid until the
// next failing call from the same thread. Do not free it.
const char *chk_last_error_message(void);

// Releases a string produced by this library.
void chk_string_free(char *ptr);

// Creates a root-system handle. `family` is "A", "B" or "BC"; `kappa_csv`
// carries the orbit multiplicities as comma-separated rationals in the CLI
// convention.
enum ChkStatus chk_system_new(const char *family,
                              uintptr_t rank,
                              const char *kappa_csv,
                              struct ChkSystem **out);

// Releases a system handle.
void chk_system_free(struct ChkSystem *handle);

// Ambient coordinate dimension of the handle's root system.
uintptr_t chk_system_dim(const struct ChkSystem *handle);

// Non-symmetric polynomial of the weight, as canonical JSON.
enum ChkStatus chk_nonsym_poly_json(const struct ChkSystem *handle,
                                    const int64_t *weight,
                                    uintptr_t weight_len,
                                    char **out_json);

// Symmetric polynomial of a dominant weight, as canonical TrigPoly JSON.
enum ChkStatus chk_sym_poly_json(const struct ChkSystem *handle,
                                 const int64_t *weight,
                                 uintptr_t weight_len,
                                 char **out_json);

// Exact value of the symmetric polynomial at the origin, as a "p/q" string.
enum ChkStatus chk_sym_value_at_zero(const struct ChkSystem *handle,
                                     const int64_t *weight,
                                     uintptr_t weight_len,
                                     char **out_rational);

// Spectral (tilde) vector of a weight as comma-separated "p/q" entries.
enum ChkStatus chk_spectral_vector(const struct ChkSystem *handle,
                                   const int64_t *weight,
                                   uintptr_t weight_len,
                                   char **out_csv);

// Non-symmetric Jack polynomial of a composition, as canonical JSON.
// Standalone: Jack polynomials take only the single parameter `k`.
enum ChkStatus chk_jack_poly_json(const int64_t *eta,
                                  uintptr_t eta_len,
                                  const char *k,
                                  char **out_json);

// Membership of a rational point (comma-separated "p/q" coordinates) in
// the convex hull of the Weyl orbit of rho. Writes 1 or 0 to `out`.
enum ChkStatus chk_hull_contains(const struct ChkSystem *handle,
                                 const char *point_csv,
                                 int32_t *out);

// Convergence table of the BC-to-A degeneration for one weight, as CSV.
// `schedule` accepts "default", "sqrt", or "k1,k2;k1,k2;...".
enum ChkStatus chk_limit_table_csv(uintptr_t rank,
                                   const int64_t *weight,
                                   uintptr_t weight_len,
                                   const char *k3,
                                   const char *schedule,
                                   const char *grid_max,
                                   const char *grid_step,
                                   char **out_csv);

// Runs a named verification suite; the JSON report is written regardless
// of the verdict, and the status distinguishes pass from fail.
// `rank` restricts the box when positive; `kappa3` may be null.
enum ChkStatus chk_verify_suite(const char *suite,
                                int32_t rank,
                                const char *kappa3,
                                char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHEREDNIK_H */
