#ifndef ADICERGO_H
#define ADICERGO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AdicergoKind {
  ADICERGO_KIND_PRIME = 0,
  ADICERGO_KIND_NATURAL = 1,
} AdicergoKind;

typedef enum AdicergoSource {
  ADICERGO_SOURCE_PRIMES = 0,
  ADICERGO_SOURCE_NATURALS = 1,
} AdicergoSource;

typedef enum AdicergoStatus {
  ADICERGO_STATUS_OK = 0,
  ADICERGO_STATUS_NULL_POINTER = 1,
  ADICERGO_STATUS_INVALID_ARGUMENT = 2,
  ADICERGO_STATUS_BUDGET_EXCEEDED = 3,
  ADICERGO_STATUS_EMPTY_RANGE = 4,
  ADICERGO_STATUS_UTF8 = 5,
  ADICERGO_STATUS_PANIC = 6,
} AdicergoStatus;

// Opaque basis handle.
typedef struct AdicergoBasis AdicergoBasis;

// Opaque reduced-phase handle.
typedef struct AdicergoPhase AdicergoPhase;

typedef struct AdicergoComplex {
  double re;
  double im;
} AdicergoComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// NUL-terminated library version. Static; do not free.
const char *adicergo_version(void);

// Message of the last failure on this thread, or null. Valid until the next
// failing call on the same thread; do not free.
const char *adicergo_last_error(void);

// Parses a basis spec such as `const:2` or `cycle:2,3,5@offset:-1`.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a valid pointer.
enum AdicergoStatus adicergo_basis_parse(const char *spec, struct AdicergoBasis **out);

// # Safety
// `b` must come from [`adicergo_basis_parse`] and not be used afterwards. Null is ignored.
void adicergo_basis_free(struct AdicergoBasis *b);

// `A(r)`; fails if it does not fit in 64 bits.
//
// # Safety
// `b` must be a live basis handle and `out` a valid pointer.
enum AdicergoStatus adicergo_basis_modulus(const struct AdicergoBasis *b, int64_t r, uint64_t *out);

// Reduced phase of `χ_{ell/A(level)}(ρ(n))`, with `rho` given constant term first.
//
// # Safety
// `b` must be a live basis handle, `rho` must point to `rho_len` values and `out` must be valid.
enum AdicergoStatus adicergo_phase_new(const struct AdicergoBasis *b,
                                       int64_t level,
                                       uint64_t ell,
                                       const int64_t *rho,
                                       uintptr_t rho_len,
                                       struct AdicergoPhase **out);

// Phase `e(γ(n)/d)` from coefficients `g_0..g_k` (index = degree; `g_0` is ignored).
//
// # Safety
// `coeffs` must point to `len` values and `out` must be valid.
enum AdicergoStatus adicergo_phase_from_parts(uint64_t d,
                                              const uint64_t *coeffs,
                                              uintptr_t len,
                                              struct AdicergoPhase **out);

// # Safety
// `p` must come from a phase constructor and not be used afterwards. Null is ignored.
void adicergo_phase_free(struct AdicergoPhase *p);

// Common denominator `D` of a phase.
//
// # Safety
// `p` must be a live phase handle and `out` a valid pointer.
enum AdicergoStatus adicergo_phase_modulus(const struct AdicergoPhase *p, uint64_t *out);

// Prime (`G`) or natural (`H`) multiplier of a phase.
//
// # Safety
// `p` must be a live phase handle and `out` a valid pointer.
enum AdicergoStatus adicergo_multiplier(const struct AdicergoPhase *p,
                                        enum AdicergoKind kind,
                                        struct AdicergoComplex *out);

// Multiplier of `χ_{ell/A(level)}` for `ρ` in one call.
//
// # Safety
// `b` must be a live basis handle, `rho` must point to `rho_len` values and `out` must be valid.
enum AdicergoStatus adicergo_character_multiplier(const struct AdicergoBasis *b,
                                                  int64_t level,
                                                  uint64_t ell,
                                                  const int64_t *rho,
                                                  uintptr_t rho_len,
                                                  enum AdicergoKind kind,
                                                  struct AdicergoComplex *out);

// `Σ_{0≤x<q} e(ψ(x)/q)` with `ψ` given constant term first.
//
// # Safety
// `coeffs` must point to `len` values and `out` must be valid.
enum AdicergoStatus adicergo_complete_exp_sum(const int64_t *coeffs,
                                              uintptr_t len,
                                              uint64_t q,
                                              struct AdicergoComplex *out);

// Normalized Weyl sum of `χ_{ell/A(level)}(ρ(n))` over `n ≤ n_max` in the source.
// `max_n = 0` keeps the default budget.
//
// # Safety
// `b` must be a live basis handle, `rho` must point to `rho_len` values and `out` must be valid.
enum AdicergoStatus adicergo_weyl_sum(const struct AdicergoBasis *b,
                                      int64_t level,
                                      uint64_t ell,
                                      const int64_t *rho,
                                      uintptr_t rho_len,
                                      uint64_t n_max,
                                      enum AdicergoSource source,
                                      uint64_t max_n,
                                      struct AdicergoComplex *out);

// Normalized `Σ e(β_0 + β_1 n + …)` over `n ≤ n_max` in the source.
//
// # Safety
// `beta` must point to `len` values and `out` must be valid.
enum AdicergoStatus adicergo_torus_weyl_sum(const double *beta,
                                            uintptr_t len,
                                            uint64_t n_max,
                                            enum AdicergoSource source,
                                            uint64_t max_n,
                                            struct AdicergoComplex *out);

// `π(n)`. `max_n = 0` keeps the default budget.
//
// # Safety
// `out` must be a valid pointer.
enum AdicergoStatus adicergo_prime_count(uint64_t n, uint64_t max_n, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADICERGO_H */
